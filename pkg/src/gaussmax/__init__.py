"""Moments of the maximum of a small centred Gaussian vector.

Closed forms cover E(M) for up to 5 variables and E(M^2) for up to 6, for an
arbitrary correlation matrix, with a specialization to segments of a
stationary AR(1) process.
"""

from .ar1 import (
    GumbelLocation,
    MaximizerResult,
    SweepRow,
    Target,
    gumbel_location,
    independence_limits,
    maximize,
    moments_ar1,
    sweep,
)
from .corrmat import CorrelationMatrix, ar1_matrix, new_correlation_matrix, read_matrix_file
from .moments import MomentResult, h, mean_max, second_moment_max, variance_max
from .orthant import orthant_prob
from .partials import (
    PartialCorrelation,
    ReducedMatrix,
    complement_indices,
    diff_correlation,
    partial_corr_one,
    partial_corr_two,
    reduced_matrix_one,
    reduced_matrix_two,
)

__version__ = "0.1.0"
