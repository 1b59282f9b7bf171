"""Turning-point location for trend plus exponential-noise time series."""
from .analytic import (
    ExponentialTrendSpec,
    PiecewiseLinearTrendSpec,
    ProportionalFamily,
    asymmetric_bias,
    build_exponential,
    build_linear_asymmetric,
    build_linear_symmetric,
    build_trend,
    is_stochastically_increasing,
    proportional_argmin_distribution,
)
from .estimate import (
    estimate_minimum_location,
    fit_rate,
    residuals,
    sliding_min_trend,
    sweep_bandwidths,
)
from .exactdist import (
    AreaFunction,
    area_below,
    confidence_interval,
    distribution_expectation,
    distribution_quantile,
    location_distribution,
)
from .model import (
    ConfidenceInterval,
    CoverageRow,
    CoverageTable,
    EndpointsTable,
    EstimationReport,
    IndexWindow,
    LocationDistribution,
    NoiseModel,
    TimeSeries,
    TrendSequence,
    ValidationError,
)
from .simulate import StudyConfig, coverage_study, sample_series, substream

__version__ = "0.1.0"
