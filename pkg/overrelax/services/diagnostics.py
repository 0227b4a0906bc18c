# overrelax/services/diagnostics.py
import logging
import math
from typing import Optional, Sequence

import numpy as np

from overrelax.core.config import settings
from overrelax.core.exceptions import DiagnosticsError
from overrelax.schemas.diagnostics import AcfReport
from overrelax.schemas.trace import ChainTrace

logger = logging.getLogger(__name__)

TRUNCATION_RULES = ("geyer", "threshold")
_MIN_SERIES_LENGTH = 10


def _as_series(series: Sequence[float]) -> np.ndarray:
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise DiagnosticsError(f"Expected a 1-D series, got shape {x.shape}")
    if x.shape[0] < _MIN_SERIES_LENGTH:
        raise DiagnosticsError(f"Series needs at least {_MIN_SERIES_LENGTH} points, got {x.shape[0]}")
    if not np.all(np.isfinite(x)):
        raise DiagnosticsError("Series contains non-finite values")
    if np.all(x == x[0]):
        raise DiagnosticsError("Series is constant; its autocorrelation is undefined")
    return x


def autocorrelation(series: Sequence[float], lag: int) -> float:
    """Biased sample autocorrelation at ``lag`` (divides by N and by the biased variance)"""
    x = _as_series(series)
    n = x.shape[0]
    if not 0 <= lag < n:
        raise DiagnosticsError(f"Lag must lie in [0, {n}), got {lag}")
    if lag == 0:
        return 1.0
    centred = x - x.mean()
    return float(np.dot(centred[: n - lag], centred[lag:]) / np.dot(centred, centred))


def autocorrelation_function(series: Sequence[float], max_lag: Optional[int] = None) -> np.ndarray:
    """Biased autocorrelations at lags 0..max_lag, computed by FFT"""
    x = _as_series(series)
    n = x.shape[0]
    max_lag = n - 1 if max_lag is None else min(max_lag, n - 1)
    centred = x - x.mean()
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centred, size)
    autocov = np.fft.irfft(spectrum * np.conj(spectrum), size)[: max_lag + 1]
    acf = autocov / autocov[0]
    acf[0] = 1.0
    return acf


def act_from_estimates(acf_estimates: np.ndarray, truncation_lag: int) -> float:
    """1 + 2 * sum of acf(1..M), floored at settings.ACT_FLOOR"""
    total = 1.0 + 2.0 * float(np.sum(acf_estimates[1 : truncation_lag + 1]))
    return max(settings.ACT_FLOOR, total)


def _geyer_truncation(acf: np.ndarray) -> int:
    # Initial positive sequence: keep pairs (2k-1, 2k) while their sum stays positive
    last = 0
    k = 1
    while 2 * k < acf.shape[0]:
        if acf[2 * k - 1] + acf[2 * k] <= 0.0:
            break
        last = 2 * k
        k += 1
    return last


def _threshold_truncation(acf: np.ndarray, n: int) -> int:
    below = np.nonzero(np.abs(acf[1:]) < 2.0 / math.sqrt(n))[0]
    return int(below[0]) + 1 if below.size else acf.shape[0] - 1


def _near_zero_lag(acf: np.ndarray, n: int) -> Optional[int]:
    below = np.nonzero(acf[1:] < 2.0 / math.sqrt(n))[0]
    return int(below[0]) + 1 if below.size else None


def autocorrelation_time(
    series: Sequence[float],
    burn_in: int = 0,
    rule: Optional[str] = None,
    name: str = "series",
    min_samples: Optional[int] = None,
) -> AcfReport:
    """
    Integrated autocorrelation time of a series after discarding ``burn_in`` points.

    Args:
        series: Values of one monitored function, one per sweep
        burn_in: Leading points to discard
        rule: "geyer" (initial positive sequence) or "threshold" (first lag
            with |acf| < 2/sqrt(N)); defaults to settings.DEFAULT_TRUNCATION_RULE
        name: Function name carried into the report
        min_samples: Minimum post-burn-in length; defaults to settings.ACT_MIN_SAMPLES

    Returns:
        AcfReport whose act can be recomputed from its stored estimates
    """
    rule = rule or settings.DEFAULT_TRUNCATION_RULE
    if rule not in TRUNCATION_RULES:
        raise DiagnosticsError(f"Unknown truncation rule '{rule}'; expected one of {TRUNCATION_RULES}")
    min_samples = settings.ACT_MIN_SAMPLES if min_samples is None else min_samples
    x = np.asarray(series, dtype=float)
    if not 0 <= burn_in < x.shape[0]:
        raise DiagnosticsError(f"burn_in must lie in [0, {x.shape[0]}), got {burn_in}")
    x = x[burn_in:]
    n = x.shape[0]
    if n < min_samples:
        raise DiagnosticsError(f"'{name}' has {n} points after burn-in; at least {min_samples} are needed")

    acf = autocorrelation_function(x)
    if rule == "geyer":
        truncation_lag = _geyer_truncation(acf)
    else:
        truncation_lag = _threshold_truncation(acf, n)

    stored_lags = min(n - 1, max(2 * truncation_lag, settings.ACF_REPORT_MIN_LAGS))
    estimates = acf[: stored_lags + 1].copy()
    report = AcfReport(
        name=name,
        acf_estimates=estimates,
        truncation_lag=truncation_lag,
        act=act_from_estimates(estimates, truncation_lag),
        n_samples=n,
        burn_in=burn_in,
        rule=rule,
        near_zero_lag=_near_zero_lag(acf, n),
    )
    logger.debug(f"ACT of {name}: {report.act:.4g} (M={truncation_lag}, N={n}, rule={rule})")
    return report


def acf_for_trace(
    trace: ChainTrace,
    fn_name: str,
    rule: Optional[str] = None,
    min_samples: Optional[int] = None,
) -> AcfReport:
    try:
        series = trace.series(fn_name)
    except KeyError as e:
        raise DiagnosticsError(str(e)) from e
    return autocorrelation_time(series, trace.burn_in, rule=rule, name=fn_name, min_samples=min_samples)


def efficiency_ratio(
    trace_baseline: ChainTrace,
    trace_method: ChainTrace,
    fn_name: str,
    rule: Optional[str] = None,
    min_samples: Optional[int] = None,
) -> float:
    """act(baseline) / act(method) for one monitored function"""
    baseline = acf_for_trace(trace_baseline, fn_name, rule, min_samples)
    method = acf_for_trace(trace_method, fn_name, rule, min_samples)
    return baseline.act / method.act
