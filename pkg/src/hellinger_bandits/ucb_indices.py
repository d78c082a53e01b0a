"""Per-arm upper-confidence indices.

Three index rules are provided:

* Hellinger-UCB: the largest mean whose squared Hellinger distance to the
  empirical mean stays inside a ball of radius ``1 - exp(-c log(t) / n)``.
  Closed forms exist for Bernoulli (quadratic) and Poisson; a generic
  bisection solver backs any family.
* KL-UCB: the largest mean with ``KL(mu_hat, mu) <= (log t + c loglog t)/n``,
  solved by bisection.
* UCB1: ``mu_hat + sqrt(2 log(t) / n)`` regardless of the family.

All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .reward_models import RewardFamily, _bhattacharyya, hellinger_sq, kl_div

__all__ = [
    "IndexRule",
    "ArmState",
    "PolicyConfig",
    "hellinger_radius",
    "hellinger_index_bernoulli",
    "hellinger_index_poisson",
    "hellinger_index_generic",
    "kl_ucb_index",
    "ucb1_index",
    "index",
]

_BISECT_TOL = 1e-12
_BISECT_MAX_ITER = 200


class IndexRule(Enum):
    HELLINGER_UCB = "hellinger-ucb"
    KL_UCB = "kl-ucb"
    UCB1 = "ucb1"


@dataclass(frozen=True)
class ArmState:
    """Sufficient statistics of one arm: pull count and reward sum."""

    pulls: int = 0
    reward_sum: float = 0.0

    def __post_init__(self) -> None:
        if self.pulls < 0:
            raise ValueError("pulls must be non-negative")
        if self.reward_sum < 0.0:
            raise ValueError("reward_sum must be non-negative")
        if self.pulls == 0 and self.reward_sum != 0.0:
            raise ValueError("an unpulled arm cannot have accumulated reward")

    @property
    def empirical_mean(self) -> float:
        if self.pulls == 0:
            raise ValueError("empirical mean undefined before the first pull")
        return self.reward_sum / self.pulls


@dataclass(frozen=True)
class PolicyConfig:
    """Index rule plus its exploration constants.

    ``c_hellinger`` must lie in (1/4, 1/2]; slightly above 1/4 works best
    in practice, hence the 0.26 default. ``c_kl_loglog`` multiplies the
    ``max(0, loglog t)`` term of the KL-UCB exploration budget; the
    common practical choice is 0.
    """

    rule: IndexRule
    c_hellinger: float = 0.26
    c_kl_loglog: float = 0.0

    def __post_init__(self) -> None:
        if not 0.25 < self.c_hellinger <= 0.5:
            raise ValueError("c_hellinger must lie in (0.25, 0.5]")
        if self.c_kl_loglog < 0.0:
            raise ValueError("c_kl_loglog must be non-negative")

    @property
    def label(self) -> str:
        return self.rule.value


def hellinger_radius(t: float, n: int, c: float) -> float:
    """Confidence-ball size ``1 - exp(-c log(t) / n)`` at step t, n pulls."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    return -math.expm1(-c * math.log(t) / n)


def _bernoulli_ball_root(p_hat: float, radius: float, b_scale: float = 1.0) -> float:
    """Larger root of the Bernoulli Hellinger-ball boundary quadratic.

    ``b_scale`` perturbs the linear coefficient; anything other than 1.0
    is strictly a negative-control hook for self-checks.
    """
    m1_sq = (1.0 - p_hat) / p_hat
    m2_sq = ((1.0 - radius) ** 2) / p_hat
    a = (m1_sq + 1.0) ** 2
    b = 2.0 * (m1_sq * m2_sq - m1_sq**2 - m1_sq - m2_sq) * b_scale
    c = (m2_sq - m1_sq) ** 2
    disc = max(b * b - 4.0 * a * c, 0.0)
    sq = math.sqrt(disc)
    if b < 0.0:
        root = (-b + sq) / (2.0 * a)
    else:
        root = (2.0 * c) / (-b - sq)
    return min(max(root, p_hat), 1.0)


def hellinger_index_bernoulli(p_hat: float, radius: float) -> float:
    """Largest q in [p_hat, 1] with ``H^2(p_hat, q) <= radius`` (closed form)."""
    if not 0.0 <= p_hat <= 1.0:
        raise ValueError("p_hat must lie in [0, 1]")
    if not 0.0 <= radius < 1.0:
        raise ValueError("radius must lie in [0, 1)")
    if radius == 0.0:
        return p_hat
    if p_hat == 0.0:
        # H^2(0, q) = 1 - sqrt(1-q), solved directly.
        return 1.0 - (1.0 - radius) ** 2
    if p_hat == 1.0:
        return 1.0
    if radius >= 1.0 - math.sqrt(p_hat):
        # The ball already contains q = 1.
        return 1.0
    return _bernoulli_ball_root(p_hat, radius)


def hellinger_index_poisson(lambda_hat: float, exploration: float) -> float:
    """Largest Poisson mean inside the Hellinger ball, in closed form.

    ``exploration`` is the budget ``c log(t) / n``; the ball constraint
    ``H^2 <= 1 - exp(-exploration)`` reduces to
    ``(sqrt(lam) - sqrt(lambda_hat))^2 <= 2 * exploration``.
    """
    if lambda_hat < 0.0:
        raise ValueError("lambda_hat must be non-negative")
    if exploration < 0.0:
        raise ValueError("exploration must be non-negative")
    return (math.sqrt(lambda_hat) + math.sqrt(2.0 * exploration)) ** 2


def _bisect_sup(constraint, lo: float, hi: float) -> float:
    # Largest mu with constraint(mu) <= 0, given constraint(lo) <= 0 < constraint(hi).
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if constraint(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _BISECT_TOL:
            break
    return lo


def hellinger_index_generic(
    family: RewardFamily, mu_hat: float, radius: float
) -> float:
    """Largest in-domain mean with ``H^2(mu_hat, mu) <= radius``, by bisection.

    Absolute tolerance 1e-12 on the mean, at most 200 iterations. H^2 is
    increasing in the mean above ``mu_hat``, so a bracket always exists.
    """
    mu_hat = family.validate_mean(mu_hat)
    if not 0.0 <= radius < 1.0:
        raise ValueError("radius must lie in [0, 1)")
    if radius == 0.0:
        return mu_hat

    if family is RewardFamily.BERNOULLI:

        def constraint(mu: float) -> float:
            return hellinger_sq(family, mu_hat, mu) - radius

        if constraint(1.0) <= 0.0:
            return 1.0
        return _bisect_sup(constraint, mu_hat, 1.0)

    # The Poisson ball is unbounded, so the boundary can sit where H^2
    # saturates; comparing affinities keeps full relative precision.
    affinity_floor = 1.0 - radius

    def constraint(mu: float) -> float:
        return affinity_floor - _bhattacharyya(family, mu_hat, mu)

    hi = max(mu_hat, 1.0)
    for _ in range(_BISECT_MAX_ITER):
        if constraint(hi) > 0.0:
            break
        hi *= 2.0
    return _bisect_sup(constraint, mu_hat, hi)


def kl_ucb_index(family: RewardFamily, mu_hat: float, bound: float) -> float:
    """Largest in-domain mean with ``KL(mu_hat, mu) <= bound``, by bisection."""
    mu_hat = family.validate_mean(mu_hat)
    if bound < 0.0:
        raise ValueError("bound must be non-negative")
    if bound == 0.0:
        return mu_hat
    log = math.log
    if family is RewardFamily.BERNOULLI:
        if mu_hat == 0.0:
            # KL(0, q) = -log(1-q), solved directly.
            return -math.expm1(-bound)
        if mu_hat == 1.0:
            return 1.0
        comp = 1.0 - mu_hat

        def constraint(q: float) -> float:
            # interior q only: the bracket (mu_hat, 1) never hits the edges
            return mu_hat * log(mu_hat / q) + comp * log(comp / (1.0 - q)) - bound

        return _bisect_sup(constraint, mu_hat, 1.0)

    if mu_hat == 0.0:
        # KL(0, lam) = lam.
        return bound

    def constraint(lam: float) -> float:
        return mu_hat * log(mu_hat / lam) - mu_hat + lam - bound

    hi = max(mu_hat, 1.0)
    for _ in range(_BISECT_MAX_ITER):
        if constraint(hi) > 0.0:
            break
        hi *= 2.0
    return _bisect_sup(constraint, mu_hat, hi)


def ucb1_index(mu_hat: float, t: float, n: int) -> float:
    """Distribution-free index ``mu_hat + sqrt(2 log(t) / n)``, unclamped."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return mu_hat + math.sqrt(2.0 * math.log(t) / n)


def index(
    config: PolicyConfig, family: RewardFamily, state: ArmState, t: int
) -> float:
    """Dispatch the configured rule on one arm's statistics at step ``t``."""
    if state.pulls < 1:
        raise ValueError("index requires at least one pull; run round-robin init")
    mu_hat = state.reward_sum / state.pulls
    rule = config.rule
    if rule is IndexRule.UCB1:
        return ucb1_index(mu_hat, t, state.pulls)
    if rule is IndexRule.KL_UCB:
        log_t = math.log(t)
        loglog = math.log(log_t) if log_t > 1.0 else 0.0
        bound = (log_t + config.c_kl_loglog * loglog) / state.pulls
        return kl_ucb_index(family, mu_hat, bound)
    exploration = config.c_hellinger * math.log(t) / state.pulls
    if family is RewardFamily.BERNOULLI:
        return hellinger_index_bernoulli(mu_hat, -math.expm1(-exploration))
    return hellinger_index_poisson(mu_hat, exploration)
