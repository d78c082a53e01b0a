"""Statistical distances between exponential-family rewards.

Walks through the squared Hellinger distance, KL divergence and total
variation distance for Bernoulli and Poisson means, and shows the
inequality chain that makes the Hellinger ball a usable confidence set.
"""

import math

import numpy as np

from hellinger_bandits import RewardFamily, hellinger_sq, kl_div, tvd

B = RewardFamily.BERNOULLI
P = RewardFamily.POISSON

# A typical cold-start situation: click rates of a few percent.
pairs = [(0.01, 0.02), (0.05, 0.1), (0.1, 0.5)]
print("Bernoulli means      H^2        KL(q,p)    TVD")
for p, q in pairs:
    print(
        f"  p={p:<5} q={q:<5}  {hellinger_sq(B, p, q):<9.6f}  "
        f"{kl_div(B, q, p):<9.6f}  {tvd(B, p, q):<9.6f}"
    )

print("\nPoisson means        H^2        KL(q,p)    TVD")
for l0, l1 in [(0.03, 0.1), (1.0, 2.0), (1.0, 4.0)]:
    print(
        f"  a={l0:<5} b={l1:<5}  {hellinger_sq(P, l0, l1):<9.6f}  "
        f"{kl_div(P, l1, l0):<9.6f}  {tvd(P, l0, l1):<9.6f}"
    )

# The chain 2 H^2 <= KL and -log(1 - H^2) <= KL/2 holds everywhere; it is
# what lets a Hellinger ball inherit KL-style concentration.
rng = np.random.default_rng(0)
worst = 0.0
for p, q in rng.uniform(0.001, 0.999, size=(5000, 2)):
    h2 = hellinger_sq(B, p, q)
    kl = kl_div(B, q, p)
    worst = max(worst, 2 * h2 - kl, -math.log1p(-h2) - 0.5 * kl)
print(f"\nworst violation of the H^2/KL chain over 5000 draws: {worst:.2e}")

# H^2 saturates at 1 for disjoint supports, unlike KL which explodes.
print(f"\nH^2(Bern 0, 1) = {hellinger_sq(B, 0.0, 1.0)}")
print(f"KL (Bern 0.5, 1) = {kl_div(B, 0.5, 1.0)}")
