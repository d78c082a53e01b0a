"""Theoretical regret and pull-count curves for Hellinger-UCB.

The expected-pull bound for a sub-optimal arm is the four-term sum

    -c log(T) / log(1 - H^2/(1+eps))          (leading logarithmic term)
    + C1(eps) / T^C2(eps)                     (polynomially decaying term)
    + sum_{t=1..T} t^(-2c)                    (p-series term)
    + exp(-2 H^2) / (1 - exp(-2 H^2))         (problem-dependent constant)

with C1 = -c / log(1 - H^2/(1+eps)) and C2 = (sqrt(1+eps)-1)^2 / (1+eps),
valid for every eps > 0. The regret upper bound is the gap-weighted sum
over sub-optimal arms, and the asymptotic lower bound for any uniformly
good policy is ``sum_i gap_i * log(T) / KL(mu_i, mu*)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .reward_models import RewardFamily, hellinger_sq, kl_div
from .simulator import BanditInstance

__all__ = [
    "BoundConstants",
    "PullBoundTerms",
    "p_series_bounds",
    "p_series_sum",
    "expected_pulls_bound",
    "expected_pulls_bound_terms",
    "regret_upper_bound",
    "regret_lower_bound",
    "best_epsilon",
]

logger = logging.getLogger(__name__)

_EXACT_PSERIES_LIMIT = 10**6
_EPSILON_GRID = np.geomspace(1e-3, 10.0, 100)


@dataclass(frozen=True)
class BoundConstants:
    """The constants entering the pull bound for one sub-optimal arm."""

    c: float
    epsilon: float
    C1: float
    C2: float

    @classmethod
    def for_gap(
        cls, family: RewardFamily, mu_star: float, mu_i: float, c: float, epsilon: float
    ) -> "BoundConstants":
        if epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        h2 = hellinger_sq(family, mu_star, mu_i)
        c1 = -c / math.log(1.0 - h2 / (1.0 + epsilon))
        c2 = (math.sqrt(1.0 + epsilon) - 1.0) ** 2 / (1.0 + epsilon)
        return cls(c=c, epsilon=epsilon, C1=c1, C2=c2)


@dataclass(frozen=True)
class PullBoundTerms:
    """Term-by-term decomposition of the expected-pull bound."""

    constants: BoundConstants
    hellinger_sq: float
    leading: float
    polynomial: float
    p_series: float
    constant: float

    @property
    def total(self) -> float:
        return self.leading + self.polynomial + self.p_series + self.constant


@lru_cache(maxsize=4096)
def p_series_bounds(c: float, horizon: int) -> tuple[float, float]:
    """Lower/upper bracket of ``sum_{t=1..T} t^(-2c)``.

    Exact summation up to T = 1e6 (bracket collapses to a point); the
    integral sandwich beyond that.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if horizon <= _EXACT_PSERIES_LIMIT:
        exact = float(np.sum(np.arange(1, horizon + 1, dtype=float) ** (-2.0 * c)))
        return exact, exact

    def integral(a: float, b: float) -> float:
        p = 2.0 * c
        if p == 1.0:
            return math.log(b) - math.log(a)
        return (b ** (1.0 - p) - a ** (1.0 - p)) / (1.0 - p)

    head = float(
        np.sum(np.arange(1, _EXACT_PSERIES_LIMIT + 1, dtype=float) ** (-2.0 * c))
    )
    # t^(-2c) is decreasing, so the tail sum over t in (a, T] is sandwiched
    # between the shifted and unshifted integrals.
    a = _EXACT_PSERIES_LIMIT
    lo = head + integral(a + 1, horizon + 1)
    hi = head + integral(a, horizon)
    return lo, hi


def p_series_sum(c: float, horizon: int) -> float:
    """Midpoint of :func:`p_series_bounds` (exact when T <= 1e6)."""
    lo, hi = p_series_bounds(c, horizon)
    return 0.5 * (lo + hi)


def _validate_gap(family, mu_star, mu_i, c, horizon) -> None:
    family.validate_mean(mu_star)
    family.validate_mean(mu_i)
    if mu_i >= mu_star:
        raise ValueError("bound is defined only for sub-optimal arms (mu_i < mu_star)")
    if not 0.25 < c <= 0.5:
        raise ValueError("c must lie in (0.25, 0.5]")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")


def expected_pulls_bound_terms(
    family: RewardFamily,
    mu_star: float,
    mu_i: float,
    c: float,
    epsilon: float,
    horizon: int,
) -> PullBoundTerms:
    """All four bound terms for one sub-optimal arm."""
    _validate_gap(family, mu_star, mu_i, c, horizon)
    constants = BoundConstants.for_gap(family, mu_star, mu_i, c, epsilon)
    h2 = hellinger_sq(family, mu_star, mu_i)
    leading = constants.C1 * math.log(horizon)
    polynomial = constants.C1 / horizon**constants.C2
    p_series = p_series_sum(c, horizon)
    constant = math.exp(-2.0 * h2) / -math.expm1(-2.0 * h2)
    return PullBoundTerms(
        constants=constants,
        hellinger_sq=h2,
        leading=leading,
        polynomial=polynomial,
        p_series=p_series,
        constant=constant,
    )


def expected_pulls_bound(
    family: RewardFamily,
    mu_star: float,
    mu_i: float,
    c: float,
    epsilon: float,
    horizon: int,
) -> float:
    """Upper bound on the expected pulls of a sub-optimal arm by time T."""
    return expected_pulls_bound_terms(
        family, mu_star, mu_i, c, epsilon, horizon
    ).total


def best_epsilon(
    family: RewardFamily, mu_star: float, mu_i: float, c: float, horizon: int
) -> tuple[float, float]:
    """Grid-minimize the pull bound over eps in [1e-3, 10] (100 log points)."""
    _validate_gap(family, mu_star, mu_i, c, horizon)
    best = (float(_EPSILON_GRID[0]), math.inf)
    for eps in _EPSILON_GRID:
        value = expected_pulls_bound(family, mu_star, mu_i, c, float(eps), horizon)
        if value < best[1]:
            best = (float(eps), value)
    return best


def regret_upper_bound(
    instance: BanditInstance,
    c: float,
    epsilon: float | None,
    horizon: int,
) -> float:
    """Gap-weighted sum of per-arm pull bounds.

    ``epsilon=None`` picks the bound-minimizing eps separately for each
    arm (the tightest curve the bound family allows); optimal arms contribute
    nothing.
    """
    mu_star = instance.best_mean
    total = 0.0
    for mu_i in instance.means:
        gap = mu_star - mu_i
        if gap == 0.0:
            continue
        if epsilon is None:
            _, pulls = best_epsilon(instance.family, mu_star, mu_i, c, horizon)
        else:
            pulls = expected_pulls_bound(
                instance.family, mu_star, mu_i, c, epsilon, horizon
            )
        total += gap * pulls
    return total


def regret_lower_bound(instance: BanditInstance, horizon: float) -> float:
    """Asymptotic lower-bound curve ``sum_i gap_i log(T) / KL(mu_i, mu*)``.

    A guide for plots, not a finite-T guarantee. Arms whose KL to the
    optimal mean is infinite (boundary means) are skipped with a
    diagnostic.
    """
    if horizon < 2:
        raise ValueError("horizon must be at least 2")
    mu_star = instance.best_mean
    total = 0.0
    for i, mu_i in enumerate(instance.means):
        gap = mu_star - mu_i
        if gap == 0.0:
            continue
        kl = kl_div(instance.family, mu_i, mu_star)
        if not math.isfinite(kl) or kl == 0.0:
            logger.warning(
                "arm %d skipped in lower bound: KL(%g, %g) is not finite/positive",
                i,
                mu_i,
                mu_star,
            )
            continue
        total += gap * math.log(horizon) / kl
    return total
