"""Data-driven estimate of the minimum location and its confidence interval.

The pipeline is: sliding-window minimum as the trend estimate, residuals
against it, exponential rate from the residual mean, then the exact argmin
law with the estimates plugged in.
"""
from __future__ import annotations

import numpy as np
from scipy.ndimage import minimum_filter1d

from . import exactdist
from .model import (
    AllResidualsZero,
    BandwidthTooLarge,
    EndpointsTable,
    EstimationReport,
    NoiseModel,
    TimeSeries,
    TrendSequence,
    ValidationError,
    WindowMismatch,
)

__all__ = [
    "check_bandwidth",
    "sliding_min_trend",
    "residuals",
    "fit_rate",
    "estimate_minimum_location",
    "sweep_bandwidths",
    "endpoints_table",
]


def check_bandwidth(h: int, n: int) -> int:
    """Validate a half-width ``h`` against a series of length ``n``."""
    if isinstance(h, bool) or int(h) != h or h < 1:
        raise ValidationError(f"bandwidth must be a positive integer, got {h!r}")
    h = int(h)
    if 2 * h + 1 > n:
        raise BandwidthTooLarge(f"bandwidth {h} needs 2h+1={2 * h + 1} points, series has {n}")
    return h


def sliding_min_trend(series: TimeSeries, h: int) -> TrendSequence:
    """Minimum of ``Y`` over ``[t-h, t+h]``, windows truncated at the ends."""
    h = check_bandwidth(h, len(series))
    # edge replication never introduces a value outside the truncated window
    levels = minimum_filter1d(series.values, size=2 * h + 1, mode="nearest")
    return TrendSequence(series.window, levels)


def residuals(series: TimeSeries, trend: TrendSequence) -> np.ndarray:
    if series.window != trend.window:
        raise WindowMismatch(f"series window {series.window} != trend window {trend.window}")
    return series.values - trend.levels


def fit_rate(resid) -> NoiseModel:
    """Exponential MLE: reciprocal of the mean residual, zeros included."""
    resid = np.asarray(resid, dtype=float)
    if resid.size == 0 or not np.any(resid > 0):
        raise AllResidualsZero("need at least one strictly positive residual")
    if np.any(resid < 0):
        raise ValidationError("residuals must be nonnegative")
    return NoiseModel(1.0 / resid.mean())


def estimate_minimum_location(series: TimeSeries, h: int, level: float = 0.95) -> EstimationReport:
    """Run the full pipeline for one bandwidth.

    Parameters
    ----------
    series : TimeSeries
        Observations with a single dominant minimum.
    h : int
        Half-width of the sliding minimum window.
    level : float
        Nominal coverage of the interval.

    Returns
    -------
    EstimationReport
        ``tau_hat`` is the first index attaining the minimum of the trend
        estimate; the distribution and interval use the estimated trend and
        rate in place of the true ones.
    """
    trend_hat = sliding_min_trend(series, h)
    noise_hat = fit_rate(residuals(series, trend_hat))
    dist = exactdist.location_distribution(trend_hat, noise_hat)
    interval = exactdist.confidence_interval(dist, level)
    tau_hat = series.window.start + int(np.argmin(trend_hat.levels))
    return EstimationReport(
        tau_hat=tau_hat,
        rate_hat=noise_hat.rate,
        trend_hat=trend_hat,
        distribution=dist,
        interval=interval,
        bandwidth=h,
    )


def sweep_bandwidths(series: TimeSeries, bandwidths, level: float = 0.95) -> dict[int, EstimationReport]:
    """Reports for several bandwidths, keyed by ascending ``h``."""
    hs = sorted({check_bandwidth(h, len(series)) for h in bandwidths})
    return {h: estimate_minimum_location(series, h, level) for h in hs}


def endpoints_table(reports: dict[int, EstimationReport]) -> EndpointsTable:
    return EndpointsTable({h: (r.interval.left, r.interval.right) for h, r in reports.items()})
