"""Exact distribution of the argmin location of a shifted-exponential series.

For ``Y_t = T_t + E_t`` with ``E_t`` i.i.d. exponential of rate ``lam``::

    P(tau = s) = integral_{T_s}^{inf} lam * exp(-lam * B(u)) du,
    B(u) = sum_{t : T_t <= u} (u - T_t).

``B`` is piecewise affine with integer slope ``k`` between consecutive sorted
levels, so the integral is a finite sum of closed-form segment terms. No
quadrature is involved.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    ConfidenceInterval,
    LocationDistribution,
    NoiseModel,
    ProbabilityOutOfRange,
    TrendSequence,
    TrendTooShort,
)

__all__ = [
    "AreaFunction",
    "area_below",
    "location_distribution",
    "distribution_expectation",
    "distribution_quantile",
    "confidence_interval",
]

#: masses below this are stored as exact zeros
MASS_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class AreaFunction:
    """Area between the horizontal line at height ``u`` and the trend below it.

    Built once in O(n log n); each evaluation is a binary search plus one
    multiply, ``k*u - prefix_sums[k-1]`` with ``k`` the number of levels
    ``<= u``.
    """

    sorted_levels: np.ndarray
    prefix_sums: np.ndarray

    @classmethod
    def from_trend(cls, trend: TrendSequence) -> "AreaFunction":
        v = np.sort(trend.levels)
        return cls(v, np.cumsum(v))

    def __call__(self, u):
        u_arr = np.asarray(u, dtype=float)
        k = np.searchsorted(self.sorted_levels, u_arr, side="right")
        below = np.where(k > 0, self.prefix_sums[np.maximum(k - 1, 0)], 0.0)
        area = np.maximum(k * u_arr - below, 0.0)
        return float(area) if area.ndim == 0 else area


def area_below(trend: TrendSequence, u: float) -> float:
    """Return ``sum over t with T_t <= u of (u - T_t)``."""
    return AreaFunction.from_trend(trend)(u)


def _segment_masses(sorted_levels: np.ndarray, rate: float) -> np.ndarray:
    """Probability carried by each segment ``[v_k, v_{k+1})`` divided by ``k``.

    Entry ``k-1`` is ``(exp(-rate*B(v_k)) - exp(-rate*B(v_{k+1}))) / k``, the
    last entry is ``exp(-rate*B(v_n)) / n``. ``B`` at the sorted levels is
    accumulated from gaps rather than ``k*v_k - S_k`` to avoid cancellation
    when the levels sit far from zero.
    """
    n = sorted_levels.size
    k = np.arange(1, n + 1, dtype=float)
    gaps = np.diff(sorted_levels)
    area_at_level = np.concatenate(([0.0], np.cumsum(k[:-1] * gaps)))
    head = np.exp(-rate * area_at_level)
    seg = np.empty(n)
    seg[:-1] = head[:-1] * -np.expm1(-rate * k[:-1] * gaps) / k[:-1]
    seg[-1] = head[-1] / n
    return seg


def location_distribution(trend: TrendSequence, noise: NoiseModel) -> LocationDistribution:
    """Exact law of ``argmin_t (T_t + E_t)``.

    The index with the k-th smallest level receives the sum of the segment
    terms from ``k`` upward. Tied levels produce zero-width segments and hence
    equal masses.

    Parameters
    ----------
    trend : TrendSequence
        Location parameters, at least two indices.
    noise : NoiseModel
        Exponential rate shared by every index.

    Returns
    -------
    LocationDistribution
        Mass on the trend's window. Entries below ``1e-300`` are set to 0.
    """
    if not isinstance(noise, NoiseModel):
        noise = NoiseModel(noise)
    levels = trend.levels
    if levels.size < 2:
        raise TrendTooShort("trend needs at least 2 indices")

    order = np.argsort(levels, kind="stable")
    seg = _segment_masses(levels[order], noise.rate)
    by_rank = np.cumsum(seg[::-1])[::-1]

    mass = np.empty_like(by_rank)
    mass[order] = by_rank
    mass[mass < MASS_FLOOR] = 0.0
    np.clip(mass, 0.0, 1.0, out=mass)
    return LocationDistribution(trend.window, mass)


def distribution_expectation(dist: LocationDistribution) -> float:
    """Mean location, in absolute window indices."""
    return float(np.dot(dist.indices.astype(float), dist.mass))


def distribution_quantile(dist: LocationDistribution, p: float) -> int:
    """Smallest index whose cumulative mass reaches ``p``."""
    if not (0.0 < p < 1.0):
        raise ProbabilityOutOfRange(f"p must lie in (0, 1), got {p!r}")
    pos = int(np.searchsorted(dist.cdf, p, side="left"))
    # rounding can leave the final CDF value a hair below p
    pos = min(pos, len(dist) - 1)
    return dist.window.start + pos


def confidence_interval(dist: LocationDistribution, level: float = 0.95) -> ConfidenceInterval:
    """Equal-tailed interval from the ``alpha/2`` and ``1 - alpha/2`` quantiles."""
    if not (0.0 < level < 1.0):
        raise ProbabilityOutOfRange(f"level must lie in (0, 1), got {level!r}")
    alpha = 1.0 - level
    left = distribution_quantile(dist, alpha / 2)
    right = distribution_quantile(dist, 1.0 - alpha / 2)
    return ConfidenceInterval(left, right, level)
