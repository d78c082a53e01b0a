"""Exponential-family reward models and statistical distances.

Two one-parameter families are supported, Bernoulli and Poisson, both in
the mean parametrization. The module provides the squared Hellinger
distance, the Kullback-Leibler divergence and the total variation
distance between two members of the same family, plus reward sampling.

All distances are pure functions; sampling consumes the caller's
``numpy.random.Generator`` and must not share one stream across threads.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

__all__ = [
    "RewardFamily",
    "hellinger_sq",
    "kl_div",
    "tvd",
    "sample",
    "sample_rewards",
]

# Tail mass at which the Poisson TVD summation stops (both distributions).
_TVD_TAIL = 1e-12


class RewardFamily(Enum):
    """One-parameter exponential family of the arm rewards."""

    BERNOULLI = "bernoulli"
    POISSON = "poisson"

    @property
    def mean_upper(self) -> float:
        return 1.0 if self is RewardFamily.BERNOULLI else math.inf

    def validate_mean(self, mu: float) -> float:
        """Return ``mu`` as a float, raising ``ValueError`` outside the domain."""
        mu = float(mu)
        if not math.isfinite(mu) or mu < 0.0 or mu > self.mean_upper:
            raise ValueError(f"mean {mu!r} outside the {self.value} domain")
        return mu


def hellinger_sq(family: RewardFamily, mu0: float, mu1: float) -> float:
    """Squared Hellinger distance between two same-family distributions.

    Bernoulli: ``1 - sqrt((1-p)(1-q)) - sqrt(pq)``.
    Poisson:   ``1 - exp(-(sqrt(l0) - sqrt(l1))^2 / 2)``.

    Symmetric in its arguments, 0 iff ``mu0 == mu1``, and at most 1.
    """
    mu0 = family.validate_mean(mu0)
    mu1 = family.validate_mean(mu1)
    if mu0 == mu1:
        return 0.0
    if family is RewardFamily.BERNOULLI:
        # clamp rounding noise for nearly-equal means; the formula is >= 0
        h2 = 1.0 - math.sqrt((1.0 - mu0) * (1.0 - mu1)) - math.sqrt(mu0 * mu1)
        return max(h2, 0.0)
    return 1.0 - math.exp(-0.5 * (math.sqrt(mu0) - math.sqrt(mu1)) ** 2)


def _bhattacharyya(family: RewardFamily, mu0: float, mu1: float) -> float:
    """Affinity ``1 - H^2`` with full relative precision near saturation.

    The subtraction in ``hellinger_sq`` flattens values near 1; solvers
    working next to the saturated edge compare affinities instead.
    """
    mu0 = family.validate_mean(mu0)
    mu1 = family.validate_mean(mu1)
    if family is RewardFamily.BERNOULLI:
        return math.sqrt((1.0 - mu0) * (1.0 - mu1)) + math.sqrt(mu0 * mu1)
    return math.exp(-0.5 * (math.sqrt(mu0) - math.sqrt(mu1)) ** 2)


def _hellinger_sq_natural(family: RewardFamily, mu0: float, mu1: float) -> float:
    """Reference H^2 through the cumulant function of the natural parameter.

    Evaluates ``1 - exp(psi((t0+t1)/2) - (psi(t0)+psi(t1))/2)`` with
    ``psi(t) = log(1+e^t)`` (Bernoulli) or ``psi(t) = e^t`` (Poisson).
    Used by self-checks; means must be interior points of the domain.
    """
    mu0 = family.validate_mean(mu0)
    mu1 = family.validate_mean(mu1)
    if family is RewardFamily.BERNOULLI:
        if not (0.0 < mu0 < 1.0 and 0.0 < mu1 < 1.0):
            raise ValueError("natural parametrization needs interior Bernoulli means")
        t0 = math.log(mu0 / (1.0 - mu0))
        t1 = math.log(mu1 / (1.0 - mu1))
        psi = _softplus
    else:
        if not (mu0 > 0.0 and mu1 > 0.0):
            raise ValueError("natural parametrization needs positive Poisson means")
        t0 = math.log(mu0)
        t1 = math.log(mu1)
        psi = math.exp
    return 1.0 - math.exp(psi(0.5 * (t0 + t1)) - 0.5 * (psi(t0) + psi(t1)))


def _softplus(x: float) -> float:
    # log(1 + e^x) without overflow for large |x|.
    if x > 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def _xlogy(x: float, y: float) -> float:
    # x * log(x/y) with the 0*log(0) = 0 convention and +inf when y has no mass.
    if x == 0.0:
        return 0.0
    if y == 0.0:
        return math.inf
    return x * math.log(x / y)


def kl_div(family: RewardFamily, mu0: float, mu1: float) -> float:
    """Kullback-Leibler divergence ``KL(P(mu0) || P(mu1))``.

    Returns ``+inf`` when absolute continuity fails (e.g. an interior
    Bernoulli mean against a degenerate one).
    """
    mu0 = family.validate_mean(mu0)
    mu1 = family.validate_mean(mu1)
    if mu0 == mu1:
        return 0.0
    if family is RewardFamily.BERNOULLI:
        kl = _xlogy(mu0, mu1) + _xlogy(1.0 - mu0, 1.0 - mu1)
    elif mu0 == 0.0:
        kl = mu1
    elif mu1 == 0.0:
        kl = math.inf
    else:
        kl = mu0 * math.log(mu0 / mu1) - mu0 + mu1
    # divergences are non-negative; clamp rounding noise at extreme means
    return max(kl, 0.0)


def tvd(family: RewardFamily, mu0: float, mu1: float) -> float:
    """Total variation distance between two same-family distributions.

    Bernoulli reduces to ``|p - q|``. Poisson sums ``|p(x) - q(x)| / 2``
    over the support, stopping once the remaining tail mass of both
    distributions drops below 1e-12.
    """
    mu0 = family.validate_mean(mu0)
    mu1 = family.validate_mean(mu1)
    if family is RewardFamily.BERNOULLI:
        return abs(mu0 - mu1)
    if mu0 == mu1:
        return 0.0
    # Running pmf recurrence p(x+1) = p(x) * lam / (x+1).
    p = math.exp(-mu0)
    q = math.exp(-mu1)
    tail_p = 1.0 - p
    tail_q = 1.0 - q
    total = abs(p - q)
    x = 0
    while tail_p > _TVD_TAIL or tail_q > _TVD_TAIL:
        x += 1
        p *= mu0 / x
        q *= mu1 / x
        tail_p -= p
        tail_q -= q
        total += abs(p - q)
    return 0.5 * total


def sample(family: RewardFamily, mu: float, rng: np.random.Generator) -> int:
    """Draw one reward from the family at mean ``mu`` using ``rng``."""
    mu = family.validate_mean(mu)
    if family is RewardFamily.BERNOULLI:
        return int(rng.random() < mu)
    return int(rng.poisson(mu))


def sample_rewards(
    family: RewardFamily,
    means: np.ndarray,
    steps: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Draw a ``(steps, K)`` reward table, one column per arm mean.

    Pre-drawing the whole table gives every policy evaluated on the same
    stream identical potential outcomes (common random numbers).
    """
    means = np.asarray(means, dtype=float)
    for mu in means:
        family.validate_mean(mu)
    if family is RewardFamily.BERNOULLI:
        return (rng.random((steps, means.size)) < means).astype(float)
    return rng.poisson(means, size=(steps, means.size)).astype(float)
