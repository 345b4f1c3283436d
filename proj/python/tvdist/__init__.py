"""Total variation distance between discrete product distributions.

Assignments are sequences of zero-based category indices, one per coordinate.
"""

from ._core import (
    Error,
    EstimateResult,
    GreedyCouplingStats,
    ProductDistribution,
    are_identical,
    build_stats,
    coordinate_tv,
    estimate_tv,
    estimator_f,
    exact_expectation_f,
    exact_pi,
    exact_sum_positive_part,
    exact_tv,
    naive_estimate_tv,
    point_mass,
    sample_count,
    sample_pi,
    validate,
)

__all__ = [
    "Error",
    "EstimateResult",
    "GreedyCouplingStats",
    "ProductDistribution",
    "are_identical",
    "build_stats",
    "coordinate_tv",
    "estimate_tv",
    "estimator_f",
    "exact_expectation_f",
    "exact_pi",
    "exact_sum_positive_part",
    "exact_tv",
    "naive_estimate_tv",
    "point_mass",
    "sample_count",
    "sample_pi",
    "validate",
]
