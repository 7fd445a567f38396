"""Dense symmetric linear algebra kernels: matvec, Cholesky, Thomas solves,
orthonormalization, and a seeded splittable RNG."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "NotPositiveDefinite",
    "SingularShiftedSystem",
    "RankDeficient",
    "TridiagMatrix",
    "Rng",
    "matvec",
    "cholesky",
    "cholesky_logdet",
    "thomas_solve",
    "orthonormalize",
]


class NotPositiveDefinite(Exception):
    """Cholesky hit a non-positive pivot; the caller should add jitter."""


class SingularShiftedSystem(Exception):
    """A shifted tridiagonal solve encountered a vanishing pivot."""


class RankDeficient(Exception):
    """Orthonormalization found a row that is numerically dependent."""


@dataclass
class TridiagMatrix:
    """Symmetric tridiagonal matrix: diagonal plus a single off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        self.diag = np.asarray(self.diag, dtype=np.float64)
        self.offdiag = np.asarray(self.offdiag, dtype=np.float64)
        if self.diag.ndim != 1 or self.diag.size < 1:
            raise ValueError("diag must be a nonempty vector")
        if self.offdiag.shape != (self.diag.size - 1,):
            raise ValueError("offdiag must have length len(diag) - 1")

    @property
    def t(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        t = self.t
        dense = np.diag(self.diag)
        idx = np.arange(t - 1)
        dense[idx, idx + 1] = self.offdiag
        dense[idx + 1, idx] = self.offdiag
        return dense


class Rng:
    """Deterministic, splittable random stream.

    Backed by a Philox counter-based generator keyed by numpy's
    SeedSequence, so the same (seed, path) pair yields an identical
    stream on every platform.  child(i) derives an independent stream.
    """

    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.path = tuple(int(p) for p in path)
        ss = np.random.SeedSequence(self.seed, spawn_key=self.path)
        self.gen = np.random.Generator(np.random.Philox(ss))

    def child(self, i: int) -> "Rng":
        return Rng(self.seed, self.path + (i,))

    def normal(self, shape) -> np.ndarray:
        return self.gen.standard_normal(shape)

    def rademacher(self, shape) -> np.ndarray:
        return 2.0 * self.gen.integers(0, 2, size=shape).astype(np.float64) - 1.0

    def chi(self, df: int, size: int) -> np.ndarray:
        return np.sqrt(self.gen.chisquare(df, size=size))

    def __repr__(self):
        return f"Rng(seed={self.seed}, path={self.path})"


def _check_square_sym(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M


def matvec(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Dense matrix-vector product Mv with a dimension check."""
    M = _check_square_sym(M)
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (M.shape[0],):
        raise ValueError(f"dimension mismatch: matrix {M.shape}, vector {v.shape}")
    return M @ v


def cholesky(M: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L L^T = M; raises NotPositiveDefinite."""
    M = _check_square_sym(M)
    try:
        return np.linalg.cholesky(M)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from exc


def cholesky_logdet(M: np.ndarray) -> float:
    """Exact log-determinant 2 * sum(log diag(L)); the reference oracle."""
    L = cholesky(M)
    return float(2.0 * np.sum(np.log(np.diag(L))))


def thomas_solve(T: TridiagMatrix, shift: float, b: np.ndarray) -> np.ndarray:
    """Solve (T + shift*I) x = b in O(t) without pivoting.

    Safe for the shifted systems produced here (SPD-similar T, shift > 0);
    a pivot below 1e-300 aborts rather than returning garbage.
    """
    b = np.asarray(b, dtype=np.float64)
    t = T.t
    if b.shape != (t,):
        raise ValueError(f"dimension mismatch: system size {t}, rhs {b.shape}")
    d = T.diag + shift
    e = T.offdiag
    cp = np.empty(max(t - 1, 0))
    dp = np.empty(t)
    pivot = d[0]
    if abs(pivot) < 1e-300:
        raise SingularShiftedSystem("zero pivot at row 0")
    dp[0] = b[0] / pivot
    if t > 1:
        cp[0] = e[0] / pivot
    for i in range(1, t):
        pivot = d[i] - e[i - 1] * cp[i - 1]
        if abs(pivot) < 1e-300:
            raise SingularShiftedSystem(f"zero pivot at row {i}")
        dp[i] = (b[i] - e[i - 1] * dp[i - 1]) / pivot
        if i < t - 1:
            cp[i] = e[i] / pivot
    x = np.empty(t)
    x[-1] = dp[-1]
    for i in range(t - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def orthonormalize(V: np.ndarray) -> np.ndarray:
    """Row-orthonormalize V by modified Gram-Schmidt (two passes).

    Raises RankDeficient when a row collapses below 1e-12 of its
    original norm after projection.
    """
    V = np.asarray(V, dtype=np.float64)
    if V.ndim != 2:
        raise ValueError("expected a 2-d array of rows")
    k, n = V.shape
    Q = np.empty((k, n))
    for i in range(k):
        w = V[i].copy()
        orig = np.linalg.norm(w)
        for _ in range(2):
            if i > 0:
                w -= Q[:i].T @ (Q[:i] @ w)
        norm = np.linalg.norm(w)
        if norm < 1e-12 * max(orig, 1e-300):
            raise RankDeficient(f"row {i} is numerically dependent")
        Q[i] = w / norm
    return Q
