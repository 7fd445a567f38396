"""Probe vectors for Hutchinson trace estimation: Rademacher, Gaussian, and
normal-orthogonal (orthogonalized Gaussians rescaled by chi radii)."""

from __future__ import annotations

import numpy as np

from .linalg import Rng, orthonormalize

__all__ = ["PROBE_KINDS", "make_probes"]

PROBE_KINDS = ("rademacher", "gaussian", "normal-orthogonal")


def _normal_orthogonal_block(s: int, n: int, rng: Rng) -> np.ndarray:
    # orthonormalize s Gaussian directions, then give each an independent
    # chi(n) radius so every probe is marginally spherical normal
    assert s <= n
    G = rng.normal((s, n))
    Q = orthonormalize(G)
    radii = rng.chi(n, s)
    return Q * radii[:, None]


def make_probes(kind: str, s: int, n: int, rng: Rng) -> np.ndarray:
    """s probe vectors of dimension n as rows; mean-0, variance-1 entries."""
    if kind not in PROBE_KINDS:
        raise ValueError(f"unknown probe kind {kind!r}")
    if s < 1 or n < 1:
        raise ValueError("s and n must be >= 1")
    if kind == "rademacher":
        return rng.rademacher((s, n))
    if kind == "gaussian":
        return rng.normal((s, n))
    # normal-orthogonal: stack independent blocks when s > n
    blocks = []
    remaining = s
    i = 0
    while remaining > 0:
        sb = min(remaining, n)
        blocks.append(_normal_orthogonal_block(sb, n, rng.child(i)))
        remaining -= sb
        i += 1
    return np.vstack(blocks)
