"""Decision-loop tests: round-robin init, argmax selection, tie rule,
and the pure state update."""

import pytest

from hellinger_bandits.bandit_core import BanditRound, fresh_round, select_arm, update
from hellinger_bandits.reward_models import RewardFamily
from hellinger_bandits.ucb_indices import ArmState, IndexRule, PolicyConfig

B = RewardFamily.BERNOULLI

ALL_RULES = [PolicyConfig(rule=r) for r in IndexRule]


def _round(t, states):
    return BanditRound(t=t, states=tuple(ArmState(*s) for s in states))


class TestSelectArm:
    @pytest.mark.parametrize("config", ALL_RULES, ids=lambda c: c.label)
    def test_round_robin_covers_every_arm_once(self, config):
        k = 10
        round_ = fresh_round(k)
        chosen = []
        for _ in range(k):
            arm = select_arm(config, B, round_)
            chosen.append(arm)
            round_ = update(round_, arm, 0.0)
        assert chosen == list(range(k))

    def test_third_step_picks_third_arm(self):
        round_ = _round(3, [(1, 0.0), (1, 1.0)] + [(0, 0.0)] * 8)
        assert select_arm(ALL_RULES[0], B, round_) == 2

    @pytest.mark.parametrize("config", ALL_RULES, ids=lambda c: c.label)
    def test_identical_states_tie_break_to_first(self, config):
        round_ = _round(13, [(4, 1.0)] * 3)
        assert select_arm(config, B, round_) == 0

    def test_ucb1_dominant_empirical_mean(self):
        config = PolicyConfig(rule=IndexRule.UCB1)
        round_ = _round(201, [(100, 90.0), (100, 10.0)])
        assert select_arm(config, B, round_) == 0

    @pytest.mark.parametrize("config", ALL_RULES, ids=lambda c: c.label)
    def test_selection_is_pure(self, config):
        round_ = _round(21, [(7, 1.0), (6, 2.0), (7, 3.0)])
        first = select_arm(config, B, round_)
        assert all(select_arm(config, B, round_) == first for _ in range(5))

    @pytest.mark.parametrize("config", ALL_RULES, ids=lambda c: c.label)
    def test_permutation_consistency(self, config):
        """Permuting distinct-state arms permutes the selection with them."""
        states = [(9, 1.0), (12, 5.0), (7, 3.0), (20, 4.0)]
        base = _round(49, states)
        winner = select_arm(config, B, base)
        perm = [2, 0, 3, 1]
        permuted = _round(49, [states[i] for i in perm])
        assert select_arm(config, B, permuted) == perm.index(winner)


class TestUpdate:
    def test_first_update(self):
        round_ = fresh_round(3)
        after = update(round_, 0, 1.0)
        assert after.t == 2
        assert after.states[0] == ArmState(pulls=1, reward_sum=1.0)
        assert after.states[1] == ArmState()

    def test_original_round_unchanged(self):
        round_ = fresh_round(2)
        update(round_, 1, 1.0)
        assert round_.t == 1
        assert round_.states[1].pulls == 0

    def test_updates_to_distinct_arms_commute(self):
        round_ = fresh_round(3)
        ab = update(update(round_, 0, 1.0), 2, 5.0)
        ba = update(update(round_, 2, 5.0), 0, 1.0)
        assert ab.states == ba.states
        assert ab.t == ba.t

    def test_pull_counts_telescope(self):
        round_ = fresh_round(4)
        for i in range(37):
            round_ = update(round_, i % 4, float(i % 2))
        assert sum(s.pulls for s in round_.states) == 37
        assert round_.t == 38

    def test_invalid_arm(self):
        round_ = fresh_round(2)
        with pytest.raises(ValueError):
            update(round_, 2, 1.0)
        with pytest.raises(ValueError):
            update(round_, -1, 1.0)


class TestFreshRound:
    def test_needs_two_arms(self):
        with pytest.raises(ValueError):
            fresh_round(1)

    def test_initial_state(self):
        round_ = fresh_round(5)
        assert round_.t == 1
        assert round_.num_arms == 5
        assert all(s == ArmState() for s in round_.states)
