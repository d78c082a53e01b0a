"""Batch top-k ranking of content arms by closed-form Hellinger-UCB index.

Content engagement is modelled as Bernoulli trials (clicks over
impressions), so every arm's index has a closed form and scoring 10,000
arms fits a millisecond-scale latency budget. Arms without impressions
score +inf and therefore rank first, mirroring the round-robin init of
the sequential loop. Ties break on the smaller id.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .reward_models import RewardFamily, sample
from .ucb_indices import ArmState, PolicyConfig, hellinger_index_bernoulli, index

__all__ = [
    "ContentStats",
    "LatencyStats",
    "read_content_stats",
    "synthetic_stats",
    "rank_top_k",
    "latency_bench",
    "synthetic_traffic_compare",
]


@dataclass(frozen=True)
class ContentStats:
    """Engagement counters of one piece of content."""

    id: str
    impressions: int
    clicks: int

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("content id must be non-empty")
        if self.impressions < 0 or self.clicks < 0:
            raise ValueError(f"negative counters for id {self.id!r}")
        if self.clicks > self.impressions:
            raise ValueError(
                f"id {self.id!r} has more clicks ({self.clicks}) than "
                f"impressions ({self.impressions})"
            )


@dataclass(frozen=True)
class LatencyStats:
    """Wall-clock statistics of repeated ranking calls, in milliseconds."""

    min_ms: float
    median_ms: float
    p99_ms: float
    per_call_ms: np.ndarray


def read_content_stats(path: str | Path) -> list[ContentStats]:
    """Load a ``id,impressions,clicks`` CSV snapshot."""
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        expected = {"id", "impressions", "clicks"}
        if reader.fieldnames is None or set(reader.fieldnames) != expected:
            raise ValueError(
                f"expected header id,impressions,clicks in {path}, "
                f"got {reader.fieldnames}"
            )
        for row in reader:
            records.append(
                ContentStats(
                    id=row["id"],
                    impressions=int(row["impressions"]),
                    clicks=int(row["clicks"]),
                )
            )
    return records


def _scores(
    impressions: np.ndarray, clicks: np.ndarray, t: float, c: float
) -> np.ndarray:
    """Vectorized Hellinger-UCB index per arm; +inf for cold arms.

    Mirrors ``hellinger_index_bernoulli(clicks/n, hellinger_radius(t, n, c))``
    arm by arm, including its special cases.
    """
    n_arms = impressions.size
    out = np.full(n_arms, math.inf)
    warm = impressions > 0
    n = impressions[warm].astype(float)
    p = clicks[warm] / n
    radius = -np.expm1(-c * math.log(t) / n)

    q = np.empty(p.size)
    at_zero = p == 0.0
    saturated = radius >= 1.0 - np.sqrt(p)  # ball reaches q = 1 (covers p = 1)
    interior = ~(at_zero | saturated)
    q[at_zero] = 1.0 - (1.0 - radius[at_zero]) ** 2
    q[saturated & ~at_zero] = 1.0

    pi = p[interior]
    ri = radius[interior]
    m1_sq = (1.0 - pi) / pi
    m2_sq = (1.0 - ri) ** 2 / pi
    a = (m1_sq + 1.0) ** 2
    b = 2.0 * (m1_sq * m2_sq - m1_sq**2 - m1_sq - m2_sq)
    cc = (m2_sq - m1_sq) ** 2
    disc = np.maximum(b * b - 4.0 * a * cc, 0.0)
    sq = np.sqrt(disc)
    root = np.empty(pi.size)
    neg = b < 0.0
    root[neg] = (-b[neg] + sq[neg]) / (2.0 * a[neg])
    root[~neg] = (2.0 * cc[~neg]) / (-b[~neg] - sq[~neg])
    q[interior] = np.clip(root, pi, 1.0)

    # radius = 0 (t = 1) collapses the ball to the empirical mean
    q[radius == 0.0] = p[radius == 0.0]
    out[warm] = q
    return out


def rank_top_k(
    stats: list[ContentStats], t: int, c: float, k: int
) -> list[str]:
    """Ids of the ``min(k, len(stats))`` highest-index arms, best first.

    Selection uses a partial partition rather than a full sort, but the
    output matches a full sort by (score desc, id asc) exactly.
    """
    if not stats:
        raise ValueError("stats must be non-empty")
    if t < 1:
        raise ValueError("t must be at least 1")
    if k < 1:
        raise ValueError("k must be at least 1")
    impressions = np.array([s.impressions for s in stats])
    clicks = np.array([s.clicks for s in stats])
    ids = [s.id for s in stats]
    scores = _scores(impressions, clicks, t, c)

    k_eff = min(k, len(stats))
    if k_eff == len(stats):
        chosen = list(range(len(stats)))
    else:
        part = np.argpartition(-scores, k_eff - 1)[:k_eff]
        threshold = scores[part].min()
        above = np.flatnonzero(scores > threshold)
        tied = sorted(np.flatnonzero(scores == threshold), key=lambda i: ids[i])
        chosen = list(above) + tied[: k_eff - above.size]
    chosen.sort(key=lambda i: (-scores[i], ids[i]))
    return [ids[i] for i in chosen]


def synthetic_stats(num_arms: int, seed: int) -> list[ContentStats]:
    """Seeded synthetic engagement snapshot (a share of arms is cold)."""
    rng = np.random.default_rng(seed)
    impressions = rng.integers(0, 5000, size=num_arms)
    ctr = rng.uniform(0.005, 0.15, size=num_arms)
    clicks = rng.binomial(impressions, ctr)
    return [
        ContentStats(id=f"content-{i:06d}", impressions=int(n), clicks=int(x))
        for i, (n, x) in enumerate(zip(impressions, clicks))
    ]


def latency_bench(
    num_arms: int, k: int, repetitions: int, seed: int
) -> LatencyStats:
    """Time ``rank_top_k`` on synthetic stats; only scoring/ranking is timed."""
    if num_arms < k:
        raise ValueError("num_arms must be at least k")
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    stats = synthetic_stats(num_arms, seed)
    t = sum(s.impressions for s in stats) + 1

    per_call = np.empty(repetitions)
    for r in range(repetitions):
        start = time.perf_counter()
        rank_top_k(stats, t, 0.26, k)
        per_call[r] = (time.perf_counter() - start) * 1e3
    return LatencyStats(
        min_ms=float(per_call.min()),
        median_ms=float(np.median(per_call)),
        p99_ms=float(np.percentile(per_call, 99)),
        per_call_ms=per_call,
    )


def synthetic_traffic_compare(
    arms: int,
    horizon: int,
    policies: list[PolicyConfig],
    seed: int,
    ctrs=None,
) -> dict[str, np.ndarray]:
    """Cumulative reward per policy when traffic is split uniformly.

    At every step one policy is drawn uniformly at random, serves the arm
    its own statistics favour, and observes a Bernoulli click at the
    arm's hidden CTR. Each policy keeps a private logical clock (its own
    serve count), so the traffic streams never overlap. Deterministic
    given the seed.
    """
    if horizon < arms:
        raise ValueError("horizon must be at least the number of arms")
    if not policies:
        raise ValueError("at least one policy is required")
    rng = np.random.default_rng(seed)
    if ctrs is None:
        ctrs = rng.uniform(0.01, 0.12, size=arms)
    else:
        ctrs = np.asarray(ctrs, dtype=float)
        if ctrs.shape != (arms,):
            raise ValueError(f"expected {arms} CTRs, got shape {ctrs.shape}")

    states = {p.label: [ArmState() for _ in range(arms)] for p in policies}
    serves = {p.label: 0 for p in policies}
    totals = {p.label: 0.0 for p in policies}
    trajectories = {p.label: np.empty(horizon) for p in policies}

    for step in range(horizon):
        config = policies[int(rng.integers(len(policies)))]
        label = config.label
        arm_states = states[label]
        serves[label] += 1
        t = serves[label]
        cold = next((i for i, s in enumerate(arm_states) if s.pulls == 0), None)
        if cold is not None:
            arm = cold
        else:
            arm = max(
                range(arms),
                key=lambda i: index(config, RewardFamily.BERNOULLI, arm_states[i], t),
            )
        reward = sample(RewardFamily.BERNOULLI, float(ctrs[arm]), rng)
        old = arm_states[arm]
        arm_states[arm] = ArmState(old.pulls + 1, old.reward_sum + reward)
        totals[label] += reward
        for p in policies:
            trajectories[p.label][step] = totals[p.label]
    return trajectories
