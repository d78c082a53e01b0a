"""Seeded multi-epoch bandit experiments with pseudo-regret aggregation.

An experiment runs several policies on one synthetic instance for a
fixed number of epochs. Every policy sees the same per-epoch reward
table (common random numbers), so regret comparisons are paired. Epoch
seeds are derived from the master seed with a platform-stable hash, and
epochs may be distributed over worker processes without changing any
number in the result.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bandit_core import fresh_round, select_arm, update
from .reward_models import RewardFamily, sample_rewards
from .ucb_indices import PolicyConfig

__all__ = [
    "BanditInstance",
    "EpisodeResult",
    "ExperimentResult",
    "pseudo_regret",
    "checkpoint_grid",
    "episode_seed",
    "run_episode",
    "run_experiment",
]

DEFAULT_CHECKPOINTS = 200


@dataclass(frozen=True)
class BanditInstance:
    """Ground truth of a simulated environment: family plus arm means."""

    family: RewardFamily
    means: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.means) < 2:
            raise ValueError("an instance needs at least two arms")
        object.__setattr__(
            self, "means", tuple(self.family.validate_mean(m) for m in self.means)
        )

    @property
    def num_arms(self) -> int:
        return len(self.means)

    @property
    def best_mean(self) -> float:
        return max(self.means)

    @property
    def gaps(self) -> np.ndarray:
        return self.best_mean - np.asarray(self.means)


@dataclass(frozen=True)
class EpisodeResult:
    """Cumulative pseudo-regret after each step plus final pull counts."""

    regret: np.ndarray
    pulls: np.ndarray


@dataclass
class ExperimentResult:
    """Per-checkpoint regret statistics aggregated over epochs.

    ``mean_regret``/``q25_regret``/``q75_regret`` map a policy label to an
    array aligned with ``timesteps``. ``final_regrets`` holds the
    per-epoch pseudo-regret at the horizon, ``mean_pulls`` the per-arm
    pull counts averaged over epochs.
    """

    timesteps: np.ndarray
    policies: list[str]
    mean_regret: dict[str, np.ndarray] = field(default_factory=dict)
    q25_regret: dict[str, np.ndarray] = field(default_factory=dict)
    q75_regret: dict[str, np.ndarray] = field(default_factory=dict)
    final_regrets: dict[str, np.ndarray] = field(default_factory=dict)
    mean_pulls: dict[str, np.ndarray] = field(default_factory=dict)


def pseudo_regret(instance: BanditInstance, pull_counts) -> float:
    """Gap-weighted pull count ``sum_i (mu* - mu_i) N_i``."""
    counts = np.asarray(pull_counts, dtype=float)
    if counts.shape != (instance.num_arms,):
        raise ValueError(
            f"expected {instance.num_arms} pull counts, got shape {counts.shape}"
        )
    return float(np.dot(instance.gaps, counts))


def checkpoint_grid(num_arms: int, horizon: int, points: int = DEFAULT_CHECKPOINTS):
    """Logarithmically spaced integer checkpoints in [K+1, horizon].

    Degenerate horizons (no index phase) fall back to every init step.
    """
    if horizon <= num_arms:
        return np.arange(1, horizon + 1)
    grid = np.geomspace(num_arms + 1, horizon, num=points)
    return np.unique(np.rint(grid).astype(int))


def episode_seed(master_seed: int, epoch: int) -> int:
    """Platform-stable 64-bit stream seed for one epoch.

    A keyed hash rather than arithmetic, so neighbouring epochs get
    unrelated streams. Policies share the seed: rewards are paired.
    """
    digest = hashlib.sha256(f"{master_seed}:{epoch}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def run_episode(
    instance: BanditInstance, config: PolicyConfig, horizon: int, seed: int
) -> EpisodeResult:
    """Drive the decision loop for ``horizon`` steps on a seeded stream.

    The reward table is drawn up front from the stream, so two policies
    run with the same seed face identical potential outcomes. Identical
    inputs give bitwise-identical outputs.
    """
    if horizon < instance.num_arms:
        raise ValueError("horizon must cover the round-robin init phase")
    rng = np.random.default_rng(seed)
    rewards = sample_rewards(instance.family, instance.means, horizon, rng)
    gaps = instance.gaps
    family = instance.family

    round_ = fresh_round(instance.num_arms)
    regret = np.empty(horizon)
    total = 0.0
    for step in range(horizon):
        arm = select_arm(config, family, round_)
        round_ = update(round_, arm, rewards[step, arm])
        total += gaps[arm]
        regret[step] = total
    pulls = np.array([s.pulls for s in round_.states])
    return EpisodeResult(regret=regret, pulls=pulls)


def _episode_task(args) -> EpisodeResult:
    return run_episode(*args)


def run_experiment(
    instance: BanditInstance,
    configs: list[PolicyConfig],
    horizon: int,
    epochs: int,
    master_seed: int,
    checkpoints: int = DEFAULT_CHECKPOINTS,
    n_workers: int = 1,
) -> ExperimentResult:
    """Run ``epochs`` paired episodes per policy and aggregate regret.

    Quantiles use linear interpolation between order statistics. With
    ``n_workers > 1`` epochs run in a process pool; per-epoch seeding
    makes the result identical to the sequential run.
    """
    if epochs < 1:
        raise ValueError("epochs must be at least 1")
    labels = [c.label for c in configs]
    if len(set(labels)) != len(labels):
        raise ValueError("policy labels must be unique")
    grid = checkpoint_grid(instance.num_arms, horizon, checkpoints)
    result = ExperimentResult(timesteps=grid, policies=labels)

    seeds = [episode_seed(master_seed, e) for e in range(epochs)]
    for config in configs:
        tasks = [(instance, config, horizon, s) for s in seeds]
        if n_workers > 1:
            with ProcessPoolExecutor(max_workers=n_workers) as pool:
                episodes = list(pool.map(_episode_task, tasks, chunksize=4))
        else:
            episodes = [_episode_task(t) for t in tasks]

        at_checkpoints = np.stack([ep.regret[grid - 1] for ep in episodes])
        label = config.label
        result.mean_regret[label] = at_checkpoints.mean(axis=0)
        result.q25_regret[label] = np.quantile(at_checkpoints, 0.25, axis=0)
        result.q75_regret[label] = np.quantile(at_checkpoints, 0.75, axis=0)
        result.final_regrets[label] = np.array([ep.regret[-1] for ep in episodes])
        result.mean_pulls[label] = np.stack([ep.pulls for ep in episodes]).mean(axis=0)
    return result
