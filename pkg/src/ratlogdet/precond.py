"""Preconditioners of the form P = D + A A^T (diagonal or scaled-identity base
plus an optional low-rank part), with Woodbury apply-inverse and a
determinant-lemma log det, built from a dense SPD matrix by one of nine
strategies.  The default strategy is the randomized truncated SVD."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import RankDeficient, Rng, cholesky, orthonormalize

__all__ = [
    "PRECOND_KINDS",
    "PreconditionerConfig",
    "Preconditioner",
    "build_preconditioner",
    "randomized_range_svd",
    "apply_inverse",
    "apply",
    "logdet_precond",
]

PRECOND_KINDS = (
    "identity",
    "diagonal",
    "rank-one",
    "partial-cholesky",
    "partial-cholesky-scaled",
    "trunc-svd",
    "trunc-svd-scaled",
    "rand-svd",
    "rand-svd-scaled",
)

DIAG_FLOOR = 1e-12


@dataclass(frozen=True)
class PreconditionerConfig:
    kind: str = "rand-svd"
    rank: int = 25
    num_iters: int = 5
    scale: float = 1e-6  # base scalar a for the "-scaled" kinds

    def __post_init__(self):
        if self.kind not in PRECOND_KINDS:
            raise ValueError(f"unknown preconditioner kind {self.kind!r}")
        if self.rank < 0:
            raise ValueError("rank must be >= 0")
        if self.num_iters < 1:
            raise ValueError("num_iters must be >= 1")
        if self.scale <= 0:
            raise ValueError("scale must be positive")


@dataclass
class Preconditioner:
    """P = diag(base) + low_rank @ low_rank.T, with cached solve data."""

    kind: str
    base: np.ndarray  # (n,) positive diagonal
    low_rank: np.ndarray  # (n, k), k possibly 0
    log_det: float = field(init=False)
    _inner_chol: np.ndarray = field(init=False, repr=False)  # chol(I_k + A^T B^-1 A)
    _sqrt_cache: tuple | None = field(init=False, default=None, repr=False)

    def __post_init__(self):
        n, k = self.low_rank.shape
        if self.base.shape != (n,):
            raise ValueError("base/low_rank dimension mismatch")
        if np.any(self.base <= 0):
            raise ValueError("base diagonal must be strictly positive")
        BinvA = self.low_rank / self.base[:, None]
        inner = np.eye(k) + self.low_rank.T @ BinvA
        self._inner_chol = cholesky(inner)
        self.log_det = float(
            np.sum(np.log(self.base)) + 2.0 * np.sum(np.log(np.diag(self._inner_chol)))
        )

    @property
    def n(self) -> int:
        return self.base.size

    @property
    def rank(self) -> int:
        return self.low_rank.shape[1]

    def _sqrt_factors(self):
        # factored square root N = D^1/2 (I + Ã Ã^T)^1/2 with Ã = D^-1/2 A,
        # so N N^T = P; the middle term needs only a k x k eigendecomposition
        if self._sqrt_cache is None:
            sqrt_base = np.sqrt(self.base)
            At = self.low_rank / sqrt_base[:, None]
            lam, W = np.linalg.eigh(At.T @ At)
            keep = lam > 1e-14 * max(lam[-1] if lam.size else 0.0, 1.0)
            U = At @ (W[:, keep] / np.sqrt(lam[keep]))
            self._sqrt_cache = (sqrt_base, U, lam[keep])
        return self._sqrt_cache

    def solve_sqrt(self, v: np.ndarray) -> np.ndarray:
        """N^-1 v for the factored square root N N^T = P."""
        sqrt_base, U, lam = self._sqrt_factors()
        w = v / sqrt_base
        if U.shape[1] == 0:
            return w
        return w + U @ ((1.0 / np.sqrt(1.0 + lam) - 1.0) * (U.T @ w))

    def solve_sqrt_t(self, v: np.ndarray) -> np.ndarray:
        """N^-T v for the factored square root N N^T = P."""
        sqrt_base, U, lam = self._sqrt_factors()
        if U.shape[1] > 0:
            v = v + U @ ((1.0 / np.sqrt(1.0 + lam) - 1.0) * (U.T @ v))
        return v / sqrt_base

    def materialize(self) -> np.ndarray:
        return np.diag(self.base) + self.low_rank @ self.low_rank.T


def apply(P: Preconditioner, v: np.ndarray) -> np.ndarray:
    """P v."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (P.n,):
        raise ValueError("dimension mismatch")
    return P.base * v + P.low_rank @ (P.low_rank.T @ v)


def _woodbury_solve(P: Preconditioner, v: np.ndarray) -> np.ndarray:
    z = v / P.base
    if P.rank == 0:
        return z
    rhs = P.low_rank.T @ z
    L = P._inner_chol
    w = np.linalg.solve(L.T, np.linalg.solve(L, rhs))
    return z - (P.low_rank @ w) / P.base


def apply_inverse(P: Preconditioner, v: np.ndarray) -> np.ndarray:
    """P^-1 v by the Woodbury identity; O(nk + k^2) per apply.

    One step of iterative refinement guards against the near-singular base
    diagonals produced when the low-rank part reproduces rows of M exactly
    (the residual diagonal then sits at the floor).
    """
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (P.n,):
        raise ValueError("dimension mismatch")
    x = _woodbury_solve(P, v)
    if P.rank > 0:
        vnorm = np.linalg.norm(v)
        for _ in range(3):
            r = v - apply(P, x)
            if np.linalg.norm(r) <= 1e-14 * vnorm:
                break
            x = x + _woodbury_solve(P, r)
    return x


def logdet_precond(P: Preconditioner) -> float:
    """log det P via the matrix determinant lemma (cached at build time)."""
    return P.log_det


OVERSAMPLE = 10


def randomized_range_svd(M, k, num_iters, rng: Rng):
    """Top-k approximate eigenpairs of SPD M by randomized subspace iteration.

    A Gaussian test matrix (k plus the usual oversampling columns) is
    multiplied by M num_iters times, orthonormalized after every multiply; the
    small projected matrix is then eigendecomposed, lifted back, and truncated
    to the top k pairs.  Returns (eigvals descending, eigvecs as k x n rows).
    """
    M = np.asarray(M, dtype=np.float64)
    n = M.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"rank must be in 1..{n}, got {k}")
    sample = min(k + OVERSAMPLE, n)
    for attempt in range(2):
        try:
            Y = rng.child(attempt).normal((sample, n))  # rows are test directions
            Q = None
            for _ in range(num_iters):
                Y = Y @ M  # rows multiplied by symmetric M
                Q = orthonormalize(Y)
                Y = Q
            B = Q @ M @ Q.T
            theta, U = np.linalg.eigh(B)
            order = np.argsort(theta)[::-1][:k]
            theta = theta[order]
            vecs = (Q.T @ U[:, order]).T
            return theta, vecs
        except RankDeficient:
            if attempt == 1:
                raise
    raise AssertionError("unreachable")


def _power_iteration(M, max_iters, tol, rng: Rng):
    v = rng.normal(M.shape[0])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iters):
        w = M @ v
        new_lam = float(v @ w)
        v = w / np.linalg.norm(w)
        if lam != 0.0 and abs(new_lam - lam) <= tol * abs(new_lam):
            lam = new_lam
            break
        lam = new_lam
    return lam, v

def _pivoted_partial_cholesky(M, k):
    """Rank-k incomplete Cholesky with greedy largest-diagonal pivoting."""
    n = M.shape[0]
    d = np.diag(M).copy()
    C = np.zeros((n, k))
    for j in range(k):
        p = int(np.argmax(d))
        if d[p] <= 0.0:
            C = C[:, :j]
            break
        col = M[:, p] - C[:, :j] @ C[p, :j]
        C[:, j] = col / np.sqrt(d[p])
        d -= C[:, j] ** 2
    return C


def _floored_diag_residual(M, A):
    d = np.diag(M) - np.sum(A * A, axis=1)
    return np.maximum(d, DIAG_FLOOR)


def build_preconditioner(M, cfg: PreconditionerConfig, rng: Rng) -> Preconditioner:
    M = np.asarray(M, dtype=np.float64)
    n = M.shape[0]
    k = cfg.rank
    kind = cfg.kind
    if kind not in ("identity", "diagonal", "rank-one") and k > n:
        raise ValueError(f"rank {k} exceeds dimension {n}")
    empty = np.zeros((n, 0))

    if kind == "identity":
        return Preconditioner(kind, np.ones(n), empty)
    if kind == "diagonal":
        return Preconditioner(kind, np.diag(M).copy(), empty)
    if kind == "rank-one":
        lam, v = _power_iteration(M, max(100, cfg.num_iters * max(k, 1)), 1e-10, rng)
        A = np.sqrt(max(lam, DIAG_FLOOR)) * v[:, None]
        return Preconditioner(kind, _floored_diag_residual(M, A), A)
    if kind in ("partial-cholesky", "partial-cholesky-scaled"):
        C = _pivoted_partial_cholesky(M, k)
        if kind == "partial-cholesky":
            return Preconditioner(kind, _floored_diag_residual(M, C), C)
        return Preconditioner(kind, np.full(n, cfg.scale), C)
    if kind in ("trunc-svd", "trunc-svd-scaled"):
        theta, vecs = np.linalg.eigh(M)
        top = np.argsort(theta)[::-1][:k]
        A = vecs[:, top] * np.sqrt(np.maximum(theta[top], 0.0))
    else:  # rand-svd, rand-svd-scaled
        theta, rows = randomized_range_svd(M, k, cfg.num_iters, rng)
        A = rows.T * np.sqrt(np.maximum(theta, 0.0))
    if kind.endswith("-scaled"):
        return Preconditioner(kind, np.full(n, cfg.scale), A)
    return Preconditioner(kind, _floored_diag_residual(M, A), A)
