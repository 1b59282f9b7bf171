import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from turnloc.analytic import (
    ExponentialTrendSpec,
    PiecewiseLinearTrendSpec,
    ProportionalFamily,
    asymmetric_bias,
    build_exponential,
    build_linear_asymmetric,
    build_linear_symmetric,
    is_stochastically_increasing,
    proportional_argmin_distribution,
)
from turnloc.exactdist import distribution_expectation, location_distribution
from turnloc.model import (
    AlphaNotPositive,
    IndexWindow,
    NoiseModel,
    ParameterNotPositive,
    RateNotPositive,
    SlopeNotPositive,
    T0OutOfWindow,
    TrendSequence,
    ValidationError,
)

W1000 = IndexWindow(1, 1000)


class TestLinearSymmetric:

    def test_small_window(self):
        t = build_linear_symmetric(1.0, IndexWindow(-2, 2))
        assert list(t.levels) == [2, 1, 0, 1, 2]

    def test_value(self):
        assert build_linear_symmetric(0.5, IndexWindow(-5, 5))[-4] == 2.0

    def test_argmin_at_zero(self):
        t = build_linear_symmetric(1 / 300, IndexWindow(-900, 900))
        assert t.indices[np.argmin(t.levels)] == 0

    def test_errors(self):
        with pytest.raises(SlopeNotPositive):
            build_linear_symmetric(0.0, IndexWindow(-2, 2))
        with pytest.raises(ValidationError):
            build_linear_symmetric(1.0, IndexWindow(1, 5))


class TestLinearAsymmetric:

    spec = PiecewiseLinearTrendSpec(1 / 300, 1 / 100, 500, W1000)

    @pytest.mark.parametrize("t,expected", [(200, 1.0), (500, 0.0), (600, 1.0)])
    def test_values(self, t, expected):
        assert build_linear_asymmetric(self.spec)[t] == pytest.approx(expected, abs=1e-15)

    def test_exact_zero_at_t0(self):
        assert build_linear_asymmetric(self.spec)[500] == 0.0

    def test_errors(self):
        with pytest.raises(SlopeNotPositive):
            PiecewiseLinearTrendSpec(-1.0, 1.0, 500, W1000)
        with pytest.raises(T0OutOfWindow):
            PiecewiseLinearTrendSpec(1.0, 1.0, 1001, W1000)


class TestExponentialTrend:

    spec = ExponentialTrendSpec(1 / 500, 1 / 100, 500, IndexWindow(0, 2000))

    def test_zero_at_t0(self):
        assert build_exponential(self.spec)[500] == 0.0

    def test_value_at_origin(self):
        assert build_exponential(self.spec)[0] == pytest.approx(2 * (math.e - 1), rel=1e-14)
        assert 2 * (math.e - 1) == pytest.approx(3.4366, abs=1e-4)

    def test_right_asymptote(self):
        levels = build_exponential(self.spec).levels
        # 4*(1 - exp(-15)) at t=2000
        assert levels[-1] < 4.0
        assert levels[-1] == pytest.approx(4.0, abs=2e-6)

    def test_monotone_branches(self):
        levels = build_exponential(self.spec).levels
        assert np.all(np.diff(levels[:501]) < 0)
        assert np.all(np.diff(levels[500:]) >= 0)

    def test_custom_amplitudes(self):
        spec = ExponentialTrendSpec(0.1, 0.2, 5, IndexWindow(0, 10), 1.0, 3.0)
        t = build_exponential(spec)
        assert t[0] == pytest.approx(math.expm1(0.5))
        assert t[10] == pytest.approx(3.0 * -math.expm1(-1.0))

    def test_errors(self):
        with pytest.raises(RateNotPositive):
            ExponentialTrendSpec(0.0, 0.1, 5, IndexWindow(0, 10))
        with pytest.raises(ParameterNotPositive):
            ExponentialTrendSpec(0.1, 0.1, 5, IndexWindow(0, 10), left_amplitude=-1.0)
        with pytest.raises(T0OutOfWindow):
            ExponentialTrendSpec(0.1, 0.1, 50, IndexWindow(0, 10))


class TestAsymmetricBias:

    def test_symmetric_is_zero(self):
        assert asymmetric_bias(0.2, 0.2, 3.0) == 0.0

    def test_study_value(self):
        assert asymmetric_bias(1 / 300, 1 / 100, 1.0) == pytest.approx(-25.066, abs=1e-3)

    def test_rate_scaling(self):
        assert asymmetric_bias(1 / 300, 1 / 100, 4.0) == pytest.approx(0.5 * asymmetric_bias(1 / 300, 1 / 100, 1.0))

    @given(st.floats(1e-4, 10), st.floats(1e-4, 10), st.floats(1e-3, 100))
    def test_antisymmetry(self, a, b, rate):
        assert asymmetric_bias(a, b, rate) == -asymmetric_bias(b, a, rate)

    @given(st.floats(1e-4, 10), st.floats(1e-4, 10), st.floats(1e-3, 100))
    def test_sign_toward_shallow_side(self, a, b, rate):
        value = asymmetric_bias(a, b, rate)
        if a < b:
            assert value <= 0
        elif a > b:
            assert value >= 0

    @pytest.mark.parametrize("args", [(0, 1, 1), (1, -1, 1), (1, 1, 0)])
    def test_errors(self, args):
        with pytest.raises(ParameterNotPositive):
            asymmetric_bias(*args)

    def test_ratio_to_exact_mean(self):
        # exact mean is about a quarter of the closed form; the acceptance
        # suite carries the +-1.5 agreement check
        w = IndexWindow(-1500, 1500)
        trend = build_linear_asymmetric(PiecewiseLinearTrendSpec(1 / 300, 1 / 100, 0, w))
        exact = distribution_expectation(location_distribution(trend, NoiseModel(1.0)))
        assert exact / asymmetric_bias(1 / 300, 1 / 100, 1.0) == pytest.approx(0.25, abs=0.01)


class TestProportionalFamily:

    def test_equal(self):
        d = proportional_argmin_distribution(ProportionalFamily.from_alphas([1, 1, 1]))
        assert list(d.mass) == [1 / 3] * 3

    def test_one_two_three(self):
        d = proportional_argmin_distribution(ProportionalFamily.from_alphas([1, 2, 3]))
        assert list(d.mass) == [1 / 6, 1 / 3, 1 / 2]

    def test_monte_carlo(self):
        rng = np.random.default_rng(31)
        n = 1_000_000
        y = np.column_stack([rng.exponential(1 / 2, n), rng.exponential(1.0, n)])
        freq = np.bincount(np.argmin(y, axis=1), minlength=2) / n
        expected = proportional_argmin_distribution(ProportionalFamily.from_alphas([2, 1])).mass
        np.testing.assert_allclose(freq, expected, atol=0.005)

    @given(st.lists(st.floats(1e-3, 1e3), min_size=2, max_size=50))
    def test_sums_to_one(self, alphas):
        d = proportional_argmin_distribution(ProportionalFamily.from_alphas(alphas))
        assert math.fsum(d.mass) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(AlphaNotPositive):
            ProportionalFamily.from_alphas([1.0, 0.0])

    @given(st.lists(st.floats(0.01, 100), min_size=2, max_size=20, unique=True))
    def test_decreasing_alphas_give_survival_dominance(self, alphas):
        alphas = np.sort(alphas)[::-1]
        y = np.linspace(0.0, 10.0, 101)[:, None]
        surv = np.exp(-y * alphas[None, :])
        assert np.all(np.diff(surv, axis=1) >= 0)


class TestStochasticOrdering:

    @pytest.mark.parametrize("levels,expected", [
        ([1, 2, 3], True),
        ([1, 1, 2], False),
        ([3, 2, 1], False),
    ])
    def test_examples(self, levels, expected):
        assert is_stochastically_increasing(TrendSequence.from_levels(levels)) is expected

    @given(st.lists(st.floats(-10, 10), min_size=2, max_size=10, unique=True))
    def test_increasing_trend_dominates_survival(self, levels):
        levels = np.sort(levels)
        trend = TrendSequence.from_levels(levels)
        assert is_stochastically_increasing(trend)
        y = np.linspace(-12, 12, 241)[:, None]
        surv = np.exp(-np.clip(y - levels[None, :], 0, None))
        assert np.all(np.diff(surv, axis=1) >= 0)
