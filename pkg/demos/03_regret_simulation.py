"""Paired regret experiment on a 10-arm Bernoulli instance.

Runs the three policies on common per-epoch reward tables and prints the
regret trajectory summary. Scaled down from the full benchmark (200
epochs at horizon 10^4) to stay interactive; pass --full to run it all.
"""

import sys

from hellinger_bandits import (
    BanditInstance,
    IndexRule,
    PolicyConfig,
    RewardFamily,
    run_experiment,
)

full = "--full" in sys.argv
instance = BanditInstance(
    family=RewardFamily.BERNOULLI,
    means=(0.01, 0.01, 0.01, 0.02, 0.02, 0.02, 0.05, 0.05, 0.05, 0.1),
)
policies = [PolicyConfig(rule=rule) for rule in IndexRule]
horizon = 10_000 if full else 2_000
epochs = 200 if full else 20

print(f"running {epochs} epochs at horizon {horizon} (paired reward tables)")
result = run_experiment(
    instance, policies, horizon=horizon, epochs=epochs, master_seed=12345
)

print(f"\n{'policy':<15} {'mean final':>11} {'q25':>8} {'q75':>8}")
for label in result.policies:
    finals = result.final_regrets[label]
    q25 = result.q25_regret[label][-1]
    q75 = result.q75_regret[label][-1]
    print(f"{label:<15} {finals.mean():>11.2f} {q25:>8.2f} {q75:>8.2f}")

print("\nmean pulls of the optimal arm (index 9):")
for label in result.policies:
    pulls = result.mean_pulls[label][9]
    print(f"  {label:<15} {pulls:>8.1f} / {horizon}")

print("\nregret at a few checkpoints:")
marks = [0, len(result.timesteps) // 2, -1]
header = "  t        " + "  ".join(f"{lab:>14}" for lab in result.policies)
print(header)
for m in marks:
    t = result.timesteps[m]
    row = "  ".join(f"{result.mean_regret[lab][m]:>14.2f}" for lab in result.policies)
    print(f"  {t:<8} {row}")
