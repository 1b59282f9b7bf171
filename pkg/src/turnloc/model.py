"""Value types shared across the package.

Every container is an immutable dataclass validated on construction. Arrays
are copied to float64 and flagged read-only, so instances can be passed
between threads and processes without defensive copies.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

__all__ = [
    "ValidationError",
    "WindowError",
    "TrendTooShort",
    "RateNotPositive",
    "ProbabilityOutOfRange",
    "ParameterNotPositive",
    "SlopeNotPositive",
    "AlphaNotPositive",
    "T0OutOfWindow",
    "BandwidthTooLarge",
    "WindowMismatch",
    "AllResidualsZero",
    "IndexWindow",
    "TimeSeries",
    "TrendSequence",
    "NoiseModel",
    "LocationDistribution",
    "ConfidenceInterval",
    "EstimationReport",
    "CoverageRow",
    "CoverageTable",
    "EndpointsTable",
]


class ValidationError(ValueError):
    """Raised when a value object or operation receives invalid input."""


class WindowError(ValidationError):
    pass


class TrendTooShort(ValidationError):
    pass


class ParameterNotPositive(ValidationError):
    pass


class RateNotPositive(ParameterNotPositive):
    pass


class SlopeNotPositive(ParameterNotPositive):
    pass


class AlphaNotPositive(ParameterNotPositive):
    pass


class ProbabilityOutOfRange(ValidationError):
    pass


class T0OutOfWindow(ValidationError):
    pass


class BandwidthTooLarge(ValidationError):
    pass


class WindowMismatch(ValidationError):
    pass


class AllResidualsZero(ValidationError):
    pass


def _frozen_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} must be finite")
    arr.flags.writeable = False
    return arr


def _check_level(level: float) -> None:
    if not (0.0 < level < 1.0):
        raise ProbabilityOutOfRange(f"level must lie in (0, 1), got {level!r}")


@dataclass(frozen=True)
class IndexWindow:
    """Contiguous integer index set ``start..end`` (both inclusive)."""

    start: int
    end: int

    def __post_init__(self):
        for name in ("start", "end"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise WindowError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.end - self.start + 1 < 2:
            raise WindowError(
                f"window [{self.start}, {self.end}] must hold at least 2 indices"
            )

    @classmethod
    def of_length(cls, n: int, start: int = 1) -> "IndexWindow":
        return cls(start, start + n - 1)

    def __len__(self) -> int:
        return self.end - self.start + 1

    @property
    def length(self) -> int:
        return len(self)

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.end + 1)

    def __contains__(self, index) -> bool:
        return self.start <= index <= self.end

    def position(self, index: int) -> int:
        """Array offset of ``index``."""
        if index not in self:
            raise WindowError(f"index {index} outside [{self.start}, {self.end}]")
        return int(index) - self.start


@dataclass(frozen=True, eq=False)
class _Indexed:
    window: IndexWindow

    def _check_length(self, arr: np.ndarray, name: str) -> None:
        if arr.size != len(self.window):
            raise ValidationError(
                f"{name} has {arr.size} entries, window holds {len(self.window)}"
            )

    @property
    def indices(self) -> np.ndarray:
        return self.window.indices

    def __len__(self) -> int:
        return len(self.window)


@dataclass(frozen=True, eq=False)
class TimeSeries(_Indexed):
    """Observations ``Y_t`` indexed by ``window``."""

    values: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.values, "values")
        self._check_length(arr, "values")
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_values(cls, values, start: int = 1) -> "TimeSeries":
        values = np.asarray(values, dtype=float)
        return cls(IndexWindow.of_length(values.size, start), values)

    def __getitem__(self, index: int) -> float:
        return float(self.values[self.window.position(index)])


@dataclass(frozen=True, eq=False)
class TrendSequence(_Indexed):
    """Deterministic location parameters ``T_t`` (or their estimates)."""

    levels: np.ndarray

    def __post_init__(self):
        if len(self.window) < 2:
            raise TrendTooShort("trend needs at least 2 indices")
        arr = _frozen_array(self.levels, "levels")
        self._check_length(arr, "levels")
        object.__setattr__(self, "levels", arr)

    @classmethod
    def from_levels(cls, levels, start: int = 1) -> "TrendSequence":
        levels = np.asarray(levels, dtype=float)
        if levels.size < 2:
            raise TrendTooShort("trend needs at least 2 indices")
        return cls(IndexWindow.of_length(levels.size, start), levels)

    def __getitem__(self, index: int) -> float:
        return float(self.levels[self.window.position(index)])


@dataclass(frozen=True)
class NoiseModel:
    """I.i.d. exponential noise with the given rate (inverse value units)."""

    rate: float

    def __post_init__(self):
        rate = float(self.rate)
        if not (math.isfinite(rate) and rate > 0):
            raise RateNotPositive(f"rate must be positive and finite, got {self.rate!r}")
        object.__setattr__(self, "rate", rate)

    @property
    def mean(self) -> float:
        return 1.0 / self.rate


@dataclass(frozen=True, eq=False)
class LocationDistribution(_Indexed):
    """Probability mass of the argmin location over ``window``."""

    mass: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.mass, "mass")
        self._check_length(arr, "mass")
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValidationError("mass entries must lie in [0, 1]")
        total = math.fsum(arr)
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"mass sums to {total!r}, expected 1")
        object.__setattr__(self, "mass", arr)

    @property
    def cdf(self) -> np.ndarray:
        return np.cumsum(self.mass)

    def __getitem__(self, index: int) -> float:
        return float(self.mass[self.window.position(index)])


@dataclass(frozen=True)
class ConfidenceInterval:
    """Closed index interval ``[left, right]`` with nominal coverage ``level``."""

    left: int
    right: int
    level: float

    def __post_init__(self):
        object.__setattr__(self, "left", int(self.left))
        object.__setattr__(self, "right", int(self.right))
        object.__setattr__(self, "level", float(self.level))
        _check_level(self.level)
        if self.left > self.right:
            raise ValidationError(f"left {self.left} exceeds right {self.right}")

    @property
    def length(self) -> int:
        """Width in index units, ``right - left``."""
        return self.right - self.left

    def __contains__(self, index) -> bool:
        return self.left <= index <= self.right


@dataclass(frozen=True, eq=False)
class EstimationReport:
    """Output of the sliding-minimum estimation pipeline for one bandwidth."""

    tau_hat: int
    rate_hat: float
    trend_hat: TrendSequence
    distribution: LocationDistribution
    interval: ConfidenceInterval
    bandwidth: int

    def __post_init__(self):
        if self.bandwidth < 1:
            raise ValidationError(f"bandwidth must be >= 1, got {self.bandwidth}")
        if not (math.isfinite(self.rate_hat) and self.rate_hat > 0):
            raise RateNotPositive(f"rate_hat must be positive, got {self.rate_hat!r}")
        if self.trend_hat.window != self.distribution.window:
            raise WindowMismatch("trend_hat and distribution windows differ")
        window = self.trend_hat.window
        argmin = window.start + int(np.argmin(self.trend_hat.levels))
        if int(self.tau_hat) != argmin:
            raise ValidationError(f"tau_hat {self.tau_hat} is not the trend argmin {argmin}")
        if self.interval.left not in window or self.interval.right not in window:
            raise ValidationError("interval endpoints fall outside the window")
        object.__setattr__(self, "tau_hat", int(self.tau_hat))
        object.__setattr__(self, "bandwidth", int(self.bandwidth))

    @property
    def window(self) -> IndexWindow:
        return self.trend_hat.window


@dataclass(frozen=True)
class CoverageRow:
    coverage_rate: float
    mean_interval_length: float


@dataclass(frozen=True)
class CoverageTable:
    """Monte Carlo coverage rate and mean interval length per bandwidth.

    ``rows`` is stored sorted by bandwidth; iteration yields ``(h, row)``.
    """

    rows: Mapping[int, CoverageRow] = field(default_factory=dict)

    def __post_init__(self):
        rows = {int(h): self.rows[h] for h in sorted(self.rows)}
        for h, row in rows.items():
            if not 0.0 <= row.coverage_rate <= 1.0:
                raise ValidationError(f"coverage rate for h={h} outside [0, 1]")
            if row.mean_interval_length < 0:
                raise ValidationError(f"negative mean length for h={h}")
        object.__setattr__(self, "rows", rows)

    @property
    def bandwidths(self) -> list[int]:
        return list(self.rows)

    def __iter__(self):
        return iter(self.rows.items())

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, h: int) -> CoverageRow:
        return self.rows[h]


@dataclass(frozen=True)
class EndpointsTable:
    """Confidence-interval endpoints per bandwidth for a single series."""

    rows: Mapping[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        rows = {}
        for h in sorted(self.rows):
            left, right = self.rows[h]
            if left > right:
                raise ValidationError(f"left end exceeds right end for h={h}")
            rows[int(h)] = (int(left), int(right))
        object.__setattr__(self, "rows", rows)

    @property
    def bandwidths(self) -> list[int]:
        return list(self.rows)

    def __iter__(self):
        return iter(self.rows.items())

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, h: int) -> tuple[int, int]:
        return self.rows[h]
