"""Stochastic log-determinant estimation via rational approximations of the
matrix logarithm, with an SLQ baseline, an exact Cholesky reference, and a
Gaussian-process kernel benchmark harness."""

from .estimators import (
    ALGORITHMS,
    EstimatorConfig,
    LogDetEstimate,
    estimate_logdet,
    exact_logdet,
    rstar_logdet,
    slq_logdet,
)
from .kernels import KernelSpec, build_covariance, sample_index_points
from .linalg import Rng
from .precond import PreconditionerConfig, build_preconditioner

__all__ = [
    "ALGORITHMS",
    "EstimatorConfig",
    "LogDetEstimate",
    "estimate_logdet",
    "exact_logdet",
    "rstar_logdet",
    "slq_logdet",
    "KernelSpec",
    "build_covariance",
    "sample_index_points",
    "Rng",
    "PreconditionerConfig",
    "build_preconditioner",
]
