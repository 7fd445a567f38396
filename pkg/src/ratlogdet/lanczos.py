"""Lanczos tridiagonalization with full reorthogonalization, plus the
multi-shift tridiagonal solves it enables.

One factorization per starting vector: feeding the right-hand side in as the
initial Lanczos direction is what lets every shifted system (op + sigma*I) be
solved from the same Q and T.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .linalg import TridiagMatrix, thomas_solve

__all__ = ["LanczosFactorization", "lanczos", "multishift_solve"]

BREAKDOWN_RTOL = 1e-12


@dataclass
class LanczosFactorization:
    Q: np.ndarray  # (t, n) row-orthonormal basis, first row = v / ||v||
    T: TridiagMatrix  # t x t symmetric tridiagonal
    start_norm: float  # ||v|| of the starting vector

    @property
    def t(self) -> int:
        return self.T.t


def lanczos(op: Callable[[np.ndarray], np.ndarray], v: np.ndarray, t: int) -> LanczosFactorization:
    """Run t Lanczos iterations of op starting from v.

    Fully reorthogonalizes against all previous basis vectors each step.
    A lucky breakdown (tiny beta) returns a truncated factorization.
    """
    v = np.asarray(v, dtype=np.float64)
    if t < 1:
        raise ValueError("t must be >= 1")
    start_norm = float(np.linalg.norm(v))
    if start_norm == 0.0:
        raise ValueError("starting vector must be nonzero")
    n = v.size
    if t > n:
        raise ValueError(f"t={t} exceeds operator dimension n={n}")

    Q = np.empty((t, n))
    alphas = np.empty(t)
    betas = np.empty(max(t - 1, 0))
    Q[0] = v / start_norm
    beta_ref = None
    size = t
    for j in range(t):
        # np.array (not asarray) so ops that return their input don't alias Q[j]
        w = np.array(op(Q[j]), dtype=np.float64)
        alphas[j] = float(Q[j] @ w)
        # full reorthogonalization, two passes
        for _ in range(2):
            w -= Q[: j + 1].T @ (Q[: j + 1] @ w)
        if j == t - 1:
            break
        beta = float(np.linalg.norm(w))
        if beta_ref is None:
            beta_ref = beta
        if beta <= BREAKDOWN_RTOL * max(beta_ref, abs(alphas[j])):
            size = j + 1
            break
        betas[j] = beta
        Q[j + 1] = w / beta
    T = TridiagMatrix(alphas[:size].copy(), betas[: size - 1].copy())
    return LanczosFactorization(Q[:size].copy(), T, start_norm)


def multishift_solve(f: LanczosFactorization, shifts: Sequence[float]) -> list[np.ndarray]:
    """Solve (T + sigma*I) w = ||v|| e1 for every shift from one factorization.

    Lifting each solution as Q^T w approximates (op + sigma*I)^-1 v.
    """
    rhs = np.zeros(f.t)
    rhs[0] = f.start_norm
    return [thomas_solve(f.T, float(sigma), rhs) for sigma in shifts]
