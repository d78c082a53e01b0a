"""Sequential decision loop: round-robin init, index argmax, state update.

A :class:`BanditRound` is an immutable snapshot of the run at the start
of step ``t``; :func:`update` returns the successor round. The loop is
sequential by nature, but distinct rounds (e.g. parallel epochs) are
independent values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .reward_models import RewardFamily
from .ucb_indices import ArmState, PolicyConfig, index

__all__ = ["BanditRound", "fresh_round", "select_arm", "update"]


@dataclass(frozen=True)
class BanditRound:
    """Global step counter plus one :class:`ArmState` per arm."""

    t: int
    states: tuple[ArmState, ...]

    @property
    def num_arms(self) -> int:
        return len(self.states)


def fresh_round(num_arms: int) -> BanditRound:
    """Round at t = 1 with every arm unpulled."""
    if num_arms < 2:
        raise ValueError("a bandit needs at least two arms")
    return BanditRound(t=1, states=tuple(ArmState() for _ in range(num_arms)))


def select_arm(
    config: PolicyConfig, family: RewardFamily, round: BanditRound
) -> int:
    """Arm to pull at the round's current step.

    The first K steps pull each arm exactly once, in order; afterwards
    the arm with the largest index wins, ties going to the smallest arm.
    """
    k = round.num_arms
    if round.t <= k:
        return (round.t - 1) % k
    best_arm = 0
    best_index = -float("inf")
    for i, state in enumerate(round.states):
        value = index(config, family, state, round.t)
        if value > best_index:
            best_index = value
            best_arm = i
    return best_arm


def update(round: BanditRound, arm: int, reward: float) -> BanditRound:
    """Successor round after observing ``reward`` on ``arm``."""
    if not 0 <= arm < round.num_arms:
        raise ValueError(f"arm {arm} out of range for {round.num_arms} arms")
    old = round.states[arm]
    new_state = ArmState(pulls=old.pulls + 1, reward_sum=old.reward_sum + reward)
    states = round.states[:arm] + (new_state,) + round.states[arm + 1 :]
    return BanditRound(t=round.t + 1, states=states)
