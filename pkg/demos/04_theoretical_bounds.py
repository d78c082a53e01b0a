"""Theoretical pull-count and regret curves.

Evaluates the expected-pull upper bound term by term, picks the
bound-minimizing epsilon, and compares the regret upper and lower
bounds on the 10-arm Bernoulli benchmark instance.
"""

from hellinger_bandits import (
    BanditInstance,
    RewardFamily,
    best_epsilon,
    expected_pulls_bound_terms,
    regret_lower_bound,
    regret_upper_bound,
)

B = RewardFamily.BERNOULLI
C = 0.26
instance = BanditInstance(
    family=B, means=(0.01, 0.01, 0.01, 0.02, 0.02, 0.02, 0.05, 0.05, 0.05, 0.1)
)

horizon = 10_000
print(f"expected-pull bounds at horizon {horizon}, c = {C}:")
print(f"{'mu_i':>6} {'eps*':>8} {'leading':>9} {'poly':>7} {'p-series':>9} {'const':>7} {'total':>8}")
for mu_i in sorted(set(instance.means))[:-1]:
    eps, _ = best_epsilon(B, instance.best_mean, mu_i, C, horizon)
    terms = expected_pulls_bound_terms(B, instance.best_mean, mu_i, C, eps, horizon)
    print(
        f"{mu_i:>6} {eps:>8.4f} {terms.leading:>9.1f} {terms.polynomial:>7.1f} "
        f"{terms.p_series:>9.1f} {terms.constant:>7.1f} {terms.total:>8.1f}"
    )

print("\nregret envelope over time:")
print(f"{'t':>8} {'lower':>9} {'upper':>9}")
for t in (100, 1000, 10_000, 100_000):
    lower = regret_lower_bound(instance, t)
    upper = regret_upper_bound(instance, C, None, t)
    print(f"{t:>8} {lower:>9.2f} {upper:>9.2f}")

# The same curves are what `hellinger-bandits simulate` writes to
# bounds.csv for the dashed overlays in the regret figure.
