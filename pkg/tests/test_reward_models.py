"""Distance and sampling tests for the exponential-family reward models.

Expected values marked as frozen were computed with independent oracles:
two-point sums over {0, 1} for Bernoulli, truncated pmf sums (scipy) for
Poisson.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from hellinger_bandits.reward_models import (
    RewardFamily,
    _hellinger_sq_natural,
    hellinger_sq,
    kl_div,
    sample,
    sample_rewards,
    tvd,
)

B = RewardFamily.BERNOULLI
P = RewardFamily.POISSON

# Two-point sum (1/2) * sum_x (sqrt p(x) - sqrt q(x))^2 over {0, 1}.
H2_BERN_01_005 = 0.00462722143599878
# Truncated sum (1/2) * sum_{x<=200} (sqrt p(x) - sqrt q(x))^2, scipy pmf.
H2_POIS_1_4 = 0.39346934028736646
# Two-point sum of p(x) log(p(x)/q(x)).
KL_BERN_05_025 = 0.14384103622589042
# Truncated |pmf| sum with 1e-12 tail bound, scipy pmf.
TVD_POIS_1_2 = 0.3297530326330465


class TestHellingerSq:
    def test_identical_means_give_zero(self):
        assert hellinger_sq(B, 0.1, 0.1) == 0.0
        assert hellinger_sq(P, 2.5, 2.5) == 0.0

    def test_disjoint_bernoulli_supports(self):
        assert hellinger_sq(B, 0.0, 1.0) == 1.0

    def test_bernoulli_matches_two_point_oracle(self):
        assert hellinger_sq(B, 0.1, 0.05) == pytest.approx(H2_BERN_01_005, abs=1e-15)

    def test_poisson_matches_truncated_sum_oracle(self):
        assert hellinger_sq(P, 1.0, 4.0) == pytest.approx(H2_POIS_1_4, abs=1e-12)
        assert hellinger_sq(P, 1.0, 4.0) == pytest.approx(1 - math.exp(-0.5), abs=1e-15)

    def test_poisson_grid_against_pmf_sum(self):
        lams = [0.05, 0.5, 1.0, 3.0, 10.0]
        xs = np.arange(0, 500)
        for l0 in lams:
            for l1 in lams:
                pmf0 = sps.poisson.pmf(xs, l0)
                pmf1 = sps.poisson.pmf(xs, l1)
                oracle = 0.5 * np.sum((np.sqrt(pmf0) - np.sqrt(pmf1)) ** 2)
                assert hellinger_sq(P, l0, l1) == pytest.approx(oracle, abs=1e-12)

    def test_domain_violations(self):
        with pytest.raises(ValueError):
            hellinger_sq(B, -0.1, 0.5)
        with pytest.raises(ValueError):
            hellinger_sq(B, 0.5, 1.2)
        with pytest.raises(ValueError):
            hellinger_sq(P, -1.0, 2.0)

    @given(
        st.floats(0.0, 1.0, allow_nan=False),
        st.floats(0.0, 1.0, allow_nan=False),
    )
    def test_bernoulli_symmetric_and_bounded(self, p, q):
        h = hellinger_sq(B, p, q)
        assert hellinger_sq(B, q, p) == h
        assert 0.0 <= h <= 1.0

    @given(
        st.floats(0.0, 50.0, allow_nan=False),
        st.floats(0.0, 50.0, allow_nan=False),
    )
    def test_poisson_symmetric_and_bounded(self, l0, l1):
        h = hellinger_sq(P, l0, l1)
        assert hellinger_sq(P, l1, l0) == h
        assert 0.0 <= h <= 1.0

    def test_zero_iff_equal_on_grid(self):
        grid = np.linspace(0.0, 1.0, 21)
        for p in grid:
            for q in grid:
                h = hellinger_sq(B, p, q)
                assert (h == 0.0) == (p == q)


class TestNaturalParametrizationIdentity:
    def test_bernoulli_closed_form_matches_cumulant_form(self):
        grid = np.linspace(0.001, 0.999, 25)
        for p in grid:
            for q in grid:
                direct = hellinger_sq(B, p, q)
                via_psi = _hellinger_sq_natural(B, p, q)
                assert direct == pytest.approx(via_psi, abs=1e-12)

    def test_poisson_closed_form_matches_cumulant_form(self):
        grid = np.geomspace(0.01, 30.0, 20)
        for l0 in grid:
            for l1 in grid:
                direct = hellinger_sq(P, l0, l1)
                via_psi = _hellinger_sq_natural(P, l0, l1)
                assert direct == pytest.approx(via_psi, abs=1e-12)

    def test_boundary_means_rejected(self):
        with pytest.raises(ValueError):
            _hellinger_sq_natural(B, 0.0, 0.5)
        with pytest.raises(ValueError):
            _hellinger_sq_natural(P, 0.0, 1.0)


class TestKLDiv:
    def test_identical_means_give_zero(self):
        assert kl_div(B, 0.3, 0.3) == 0.0
        assert kl_div(P, 1.7, 1.7) == 0.0

    def test_bernoulli_matches_two_point_oracle(self):
        assert kl_div(B, 0.5, 0.25) == pytest.approx(KL_BERN_05_025, abs=1e-15)

    def test_infinite_when_absolute_continuity_fails(self):
        assert kl_div(B, 0.5, 1.0) == math.inf
        assert kl_div(B, 0.5, 0.0) == math.inf
        assert kl_div(B, 0.0, 1.0) == math.inf
        assert kl_div(P, 2.0, 0.0) == math.inf

    def test_degenerate_bernoulli_closed_forms(self):
        # KL(0, q) = -log(1-q); KL(1, q) = -log(q)
        assert kl_div(B, 0.0, 0.3) == pytest.approx(-math.log(0.7), abs=1e-15)
        assert kl_div(B, 1.0, 0.3) == pytest.approx(-math.log(0.3), abs=1e-15)
        assert kl_div(B, 0.0, 0.0) == 0.0
        assert kl_div(B, 1.0, 1.0) == 0.0

    def test_poisson_closed_form(self):
        # lam0 log(lam0/lam1) - lam0 + lam1
        assert kl_div(P, 1.0, 2.0) == pytest.approx(math.log(0.5) + 1.0, abs=1e-15)
        assert kl_div(P, 0.0, 2.0) == 2.0

    @given(
        st.floats(0.0, 1.0, allow_nan=False),
        st.floats(0.0, 1.0, allow_nan=False),
    )
    def test_bernoulli_nonnegative(self, p, q):
        assert kl_div(B, p, q) >= 0.0


class TestTVD:
    def test_identical_means_give_zero(self):
        assert tvd(B, 0.4, 0.4) == 0.0
        assert tvd(P, 3.0, 3.0) == 0.0

    def test_bernoulli_absolute_difference(self):
        assert tvd(B, 0.1, 0.6) == pytest.approx(0.5, abs=1e-15)

    def test_poisson_matches_truncated_sum_oracle(self):
        assert tvd(P, 1.0, 2.0) == pytest.approx(TVD_POIS_1_2, abs=1e-11)

    def test_poisson_grid_against_pmf_sum(self):
        xs = np.arange(0, 600)
        for l0, l1 in [(0.1, 0.3), (0.5, 5.0), (2.0, 2.5), (0.0, 1.0), (10.0, 20.0)]:
            oracle = 0.5 * np.sum(
                np.abs(sps.poisson.pmf(xs, l0) - sps.poisson.pmf(xs, l1))
            )
            assert tvd(P, l0, l1) == pytest.approx(oracle, abs=1e-11)

    def test_symmetry_exact(self):
        grid = [0.0, 0.2, 0.5, 0.9, 1.0]
        for a in grid:
            for b in grid:
                assert tvd(B, a, b) == tvd(B, b, a)
        for a in [0.0, 0.5, 2.0, 7.5]:
            for b in [0.1, 1.0, 3.0]:
                assert tvd(P, a, b) == pytest.approx(tvd(P, b, a), abs=1e-14)


class TestDistanceInequalities:
    """The chain H^2 <= TVD, 2 H^2 <= KL, -log(1-H^2) <= KL/2, plus the
    triangle inequality of the (unsquared) Hellinger metric."""

    def _points(self, family, count, rng):
        if family is B:
            return rng.uniform(0.0, 1.0, size=(count, 3))
        return rng.uniform(0.0, 12.0, size=(count, 3))

    @pytest.mark.parametrize("family", [B, P])
    def test_hellinger_below_tvd(self, family):
        rng = np.random.default_rng(11)
        for a, b, _ in self._points(family, 400, rng):
            assert hellinger_sq(family, a, b) <= tvd(family, a, b) + 1e-12

    @pytest.mark.parametrize("family", [B, P])
    def test_kl_dominates_hellinger(self, family):
        rng = np.random.default_rng(12)
        for a, b, _ in self._points(family, 400, rng):
            h2 = hellinger_sq(family, a, b)
            kl = kl_div(family, b, a)
            if not math.isfinite(kl):
                continue
            assert 2.0 * h2 <= kl + 1e-12
            assert -math.log1p(-min(h2, 1 - 1e-16)) <= 0.5 * kl + 1e-12

    @pytest.mark.parametrize("family", [B, P])
    def test_triangle_inequality_on_triples(self, family):
        grid = (
            np.linspace(0.0, 1.0, 12)
            if family is B
            else np.concatenate(([0.0], np.geomspace(0.05, 10.0, 11)))
        )
        for a in grid:
            for b in grid:
                for m in grid:
                    lhs = math.sqrt(hellinger_sq(family, a, b))
                    rhs = math.sqrt(hellinger_sq(family, a, m)) + math.sqrt(
                        hellinger_sq(family, m, b)
                    )
                    assert lhs <= rhs + 1e-12


class TestSampling:
    def test_degenerate_bernoulli(self):
        rng = np.random.default_rng(0)
        assert all(sample(B, 0.0, rng) == 0 for _ in range(50))
        assert all(sample(B, 1.0, rng) == 1 for _ in range(50))

    def test_same_stream_state_same_value(self):
        a = sample(B, 0.37, np.random.default_rng(99))
        b = sample(B, 0.37, np.random.default_rng(99))
        assert a == b
        x = sample(P, 3.0, np.random.default_rng(99))
        y = sample(P, 3.0, np.random.default_rng(99))
        assert x == y

    def test_bernoulli_empirical_mean(self):
        rng = np.random.default_rng(123)
        table = sample_rewards(B, np.array([0.1]), 10**6, rng)
        assert abs(table.mean() - 0.1) < 1e-3

    def test_scalar_sampler_empirical_mean(self):
        rng = np.random.default_rng(321)
        draws = [sample(B, 0.1, rng) for _ in range(100_000)]
        assert abs(np.mean(draws) - 0.1) < 5e-3

    def test_poisson_empirical_mean(self):
        rng = np.random.default_rng(7)
        table = sample_rewards(P, np.array([2.5]), 200_000, rng)
        assert abs(table.mean() - 2.5) < 2e-2

    def test_support(self):
        rng = np.random.default_rng(5)
        bern = sample_rewards(B, np.array([0.3, 0.7]), 1000, rng)
        assert set(np.unique(bern)) <= {0.0, 1.0}
        pois = sample_rewards(P, np.array([1.0, 4.0]), 1000, rng)
        assert np.all(pois >= 0)
        assert np.all(pois == np.rint(pois))

    def test_domain_violation(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ValueError):
            sample(B, 1.5, rng)
        with pytest.raises(ValueError):
            sample_rewards(P, np.array([1.0, -2.0]), 10, rng)
