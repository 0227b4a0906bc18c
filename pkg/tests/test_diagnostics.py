# tests/test_diagnostics.py
import numpy as np
import pytest

from overrelax.core.config import settings
from overrelax.core.exceptions import DiagnosticsError
from overrelax.schemas.sampler import GibbsSpec
from overrelax.schemas.trace import ChainTrace
from overrelax.services.diagnostics import (
    act_from_estimates,
    acf_for_trace,
    autocorrelation,
    autocorrelation_function,
    autocorrelation_time,
    efficiency_ratio,
)


@pytest.fixture(scope="module")
def iid_series():
    return np.random.default_rng(2).standard_normal(10**5)


@pytest.fixture
def ar1_long(ar1):
    return ar1(0.9, 10**6, seed=3)


class TestAutocorrelation:
    def test_lag_zero(self, iid_series):
        assert autocorrelation(iid_series, 0) == 1.0

    def test_iid_lag_one(self, iid_series):
        assert abs(autocorrelation(iid_series, 1)) < 0.01

    def test_fft_matches_direct(self, iid_series):
        acf = autocorrelation_function(iid_series[:5000], max_lag=20)
        assert acf.shape == (21,)
        for lag in (1, 5, 20):
            assert acf[lag] == pytest.approx(autocorrelation(iid_series[:5000], lag), abs=1e-12)

    def test_ar1_matches_analytic(self, ar1_long):
        acf = autocorrelation_function(ar1_long, max_lag=20)
        np.testing.assert_allclose(acf, 0.9 ** np.arange(21), atol=0.01)

    @pytest.mark.parametrize("series", [np.ones(100), np.arange(5.0), [1.0, np.nan] * 10])
    def test_unusable_series(self, series):
        with pytest.raises(DiagnosticsError):
            autocorrelation(series, 1)

    def test_lag_out_of_range(self, iid_series):
        with pytest.raises(DiagnosticsError):
            autocorrelation(iid_series[:50], 50)


class TestAutocorrelationTime:
    def test_ar1(self, ar1_long):
        report = autocorrelation_time(ar1_long)
        assert report.act == pytest.approx(19.0, rel=0.10)
        assert 30 <= report.near_zero_lag <= 150

    def test_ar1_threshold_rule(self, ar1_long):
        report = autocorrelation_time(ar1_long, rule="threshold")
        assert report.rule == "threshold"
        assert report.act == pytest.approx(19.0, rel=0.10)

    def test_iid(self, iid_series):
        report = autocorrelation_time(iid_series)
        assert report.act == pytest.approx(1.0, abs=0.1)

    def test_recomputable_from_report(self, ar1):
        report = autocorrelation_time(ar1(0.7, 20000, seed=4), burn_in=100)
        assert report.n_samples == 19900
        assert report.burn_in == 100
        assert report.max_lag >= max(2 * report.truncation_lag, settings.ACF_REPORT_MIN_LAGS)
        assert report.act == act_from_estimates(report.acf_estimates, report.truncation_lag)

    def test_affine_invariance(self, ar1):
        series = ar1(0.5, 20000, seed=5)
        base = autocorrelation_time(series).act
        assert autocorrelation_time(3.5 * series - 12.0).act == pytest.approx(base, abs=1e-9)

    def test_floor(self):
        assert act_from_estimates(np.array([1.0, -0.9, 0.2]), 1) == settings.ACT_FLOOR

    def test_minimum_samples(self, iid_series):
        with pytest.raises(DiagnosticsError):
            autocorrelation_time(iid_series[:500])
        report = autocorrelation_time(iid_series[:500], min_samples=100)
        assert report.n_samples == 500

    def test_unknown_rule(self, iid_series):
        with pytest.raises(DiagnosticsError):
            autocorrelation_time(iid_series, rule="by-eye")

    def test_summary_keys(self, iid_series):
        summary = autocorrelation_time(iid_series, name="x1").summary()
        assert summary["function"] == "x1"
        assert set(summary) == {
            "function", "act", "truncation_lag", "near_zero_lag", "n_samples", "burn_in", "rule", "max_lag",
        }


class TestTraces:
    def make_trace(self, series: np.ndarray, burn_in: int = 0) -> ChainTrace:
        return ChainTrace(names=["x1"], values=series[:, None], burn_in=burn_in, seed=1, spec=GibbsSpec())

    def test_efficiency_ratio(self, ar1):
        slow = self.make_trace(ar1(0.9, 200_000, seed=6))
        fast = self.make_trace(np.random.default_rng(7).standard_normal(200_000))
        assert efficiency_ratio(slow, fast, "x1") == pytest.approx(19.0, rel=0.2)

    def test_burn_in_applied(self, ar1):
        report = acf_for_trace(self.make_trace(ar1(0.5, 5000, seed=8), burn_in=1000), "x1")
        assert report.n_samples == 4000

    def test_missing_function(self, iid_series):
        with pytest.raises(DiagnosticsError):
            acf_for_trace(self.make_trace(iid_series), "tau")
