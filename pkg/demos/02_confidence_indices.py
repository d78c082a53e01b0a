"""Upper-confidence indices: Hellinger-UCB, KL-UCB and UCB1.

Shows how the Hellinger confidence radius shrinks with pulls, compares
the three indices on the same arm statistics, and checks the Bernoulli
closed form against the generic bisection solver.
"""

import math

from hellinger_bandits import (
    ArmState,
    IndexRule,
    PolicyConfig,
    RewardFamily,
    hellinger_index_bernoulli,
    hellinger_index_generic,
    hellinger_index_poisson,
    hellinger_radius,
    index,
)

B = RewardFamily.BERNOULLI

# The ball radius 1 - exp(-c log(t)/n) grows slowly in t and shrinks in n.
print("Hellinger radius at c = 0.26:")
for t, n in [(100, 1), (100, 10), (10_000, 10), (10_000, 1000)]:
    print(f"  t={t:<6} n={n:<5} radius={hellinger_radius(t, n, 0.26):.5f}")

# One arm, three rules: 3 clicks out of 40 impressions at step 5000.
state = ArmState(pulls=40, reward_sum=3.0)
print(f"\nempirical mean: {state.empirical_mean:.4f}")
for rule in IndexRule:
    config = PolicyConfig(rule=rule)
    print(f"  {rule.value:<14} index = {index(config, B, state, 5000):.4f}")

# The Bernoulli index is the larger root of a quadratic; the bisection
# solver recovers it to solver tolerance.
p_hat, radius = 0.075, hellinger_radius(5000, 40, 0.26)
closed = hellinger_index_bernoulli(p_hat, radius)
generic = hellinger_index_generic(B, p_hat, radius)
print(f"\nclosed form {closed:.12f} vs bisection {generic:.12f}")
print(f"difference  {abs(closed - generic):.2e}")

# Poisson is even simpler: the ball edge is (sqrt(mean) + sqrt(2x))^2.
x = 0.26 * math.log(5000) / 40
print(f"\nPoisson index at mean 0.075: {hellinger_index_poisson(0.075, x):.4f}")
