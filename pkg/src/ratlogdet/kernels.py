"""Gaussian-process covariance matrices (RBF and Matérn-5/2) over randomly
sampled index points; these are the benchmark matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Rng

__all__ = ["KernelSpec", "sample_index_points", "kernel_value", "build_covariance"]

SQRT5 = np.sqrt(5.0)


@dataclass(frozen=True)
class KernelSpec:
    family: str = "rbf"  # "rbf" or "matern52"
    amplitude: float = 1.0
    length_scale: float = 1.0
    jitter: float = 1e-6

    def __post_init__(self):
        if self.family not in ("rbf", "matern52"):
            raise ValueError(f"unknown kernel family {self.family!r}")
        if self.amplitude <= 0 or self.length_scale <= 0:
            raise ValueError("amplitude and length_scale must be positive")
        if self.jitter < 0:
            raise ValueError("jitter must be non-negative")


def sample_index_points(n: int, d: int, rng: Rng) -> np.ndarray:
    """n standard-normal index points in d dimensions."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    return rng.normal((n, d))


def _kernel_of_r(spec: KernelSpec, r):
    a2 = spec.amplitude**2
    ell = spec.length_scale
    if spec.family == "rbf":
        return a2 * np.exp(-(r * r) / (2.0 * ell * ell))
    u = SQRT5 * r / ell
    return a2 * (1.0 + u + u * u / 3.0) * np.exp(-u)


def kernel_value(spec: KernelSpec, x, y) -> float:
    """Covariance between two points (jitter not included)."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    r = np.linalg.norm(x - y)
    return float(_kernel_of_r(spec, r))


def build_covariance(spec: KernelSpec, points: np.ndarray) -> np.ndarray:
    """Dense covariance matrix K[i,j] = k(x_i, x_j) + jitter * [i == j]."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ValueError("points must be an n x d array")
    n = points.shape[0]
    sq = np.sum(points * points, axis=1)
    r2 = sq[:, None] + sq[None, :] - 2.0 * (points @ points.T)
    # exact symmetry and a clean zero diagonal before the elementwise kernel
    r2 = 0.5 * (r2 + r2.T)
    np.fill_diagonal(r2, 0.0)
    np.maximum(r2, 0.0, out=r2)
    K = _kernel_of_r(spec, np.sqrt(r2))
    K[np.diag_indices(n)] = spec.amplitude**2 + spec.jitter
    return K
