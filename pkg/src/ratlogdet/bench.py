"""Benchmark harness: builds kernel matrices, runs estimator sweeps over
matrix size, dimension, and hyperparameters, and persists records to CSV or
JSON.  Trial (value, trial) pairs are seeded so every algorithm in a sweep
sees the same matrices (paired comparisons)."""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from .estimators import ALGORITHMS, EstimatorConfig, estimate_logdet
from .kernels import KernelSpec, build_covariance, sample_index_points
from .linalg import Rng, cholesky_logdet
from .precond import PRECOND_KINDS, PreconditionerConfig
from .probes import PROBE_KINDS

__all__ = [
    "RunConfig",
    "BenchRecord",
    "SweepSpec",
    "SWEEP_PARAMS",
    "run_single",
    "run_sweep",
    "emit_csv",
    "emit_json",
    "read_csv",
    "verify",
]

SWEEP_PARAMS = (
    "n",
    "d",
    "precond-rank",
    "precond-iters",
    "probes",
    "lanczos-iters",
    "probe-kind",
    "precond",
)


@dataclass(frozen=True)
class RunConfig:
    kernel_family: str = "rbf"
    n: int = 1000
    d: int = 1
    jitter: float = 1e-6
    algorithm: str = "r3"
    probe_kind: str = "rademacher"
    s: int = 35
    t: int = 20
    precond_kind: str = "rand-svd"
    precond_rank: int = 25
    precond_iters: int = 5
    seed: int = 0
    exact_cutoff: int = 5000

    def estimator_config(self) -> EstimatorConfig:
        return EstimatorConfig(
            algorithm=self.algorithm,
            num_probes=self.s,
            lanczos_iters=self.t,
            probe_kind=self.probe_kind,
            precond=PreconditionerConfig(
                kind=self.precond_kind,
                rank=self.precond_rank,
                num_iters=self.precond_iters,
                scale=max(self.jitter, 1e-12),
            ),
            seed=self.seed,
        )


@dataclass
class BenchRecord:
    kernel_family: str
    n: int
    d: int
    jitter: float
    algorithm: str
    probe_kind: str
    s: int
    t: int
    precond_kind: str
    precond_rank: int
    precond_iters: int
    seed: int
    estimate: float | None
    exact: float | None
    abs_error: float | None
    wall_time_ms: float | None
    error: str | None = None


RECORD_FIELDS = [f.name for f in fields(BenchRecord)]
_FLOAT_FIELDS = {"jitter", "estimate", "exact", "abs_error", "wall_time_ms"}
_INT_FIELDS = {"n", "d", "s", "t", "precond_rank", "precond_iters", "seed"}


def build_matrix(config: RunConfig) -> np.ndarray:
    """The benchmark matrix for a config; depends only on kernel/n/d/jitter/seed."""
    spec = KernelSpec(config.kernel_family, jitter=config.jitter)
    pts = sample_index_points(config.n, config.d, Rng(config.seed).child(0))
    return build_covariance(spec, pts)


def run_single(config: RunConfig) -> BenchRecord:
    """Run one estimator on one freshly sampled kernel matrix."""
    base = dict(
        kernel_family=config.kernel_family,
        n=config.n,
        d=config.d,
        jitter=config.jitter,
        algorithm=config.algorithm,
        probe_kind=config.probe_kind,
        s=config.s,
        t=config.t,
        precond_kind=config.precond_kind,
        precond_rank=config.precond_rank,
        precond_iters=config.precond_iters,
        seed=config.seed,
    )
    try:
        M = build_matrix(config)
        est = estimate_logdet(M, config.estimator_config())
        if config.algorithm == "exact":
            exact = est.value
        elif config.n <= config.exact_cutoff:
            exact = cholesky_logdet(M)
        else:
            exact = None
        abs_error = abs(est.value - exact) if exact is not None else None
        return BenchRecord(
            **base,
            estimate=est.value,
            exact=exact,
            abs_error=abs_error,
            wall_time_ms=est.wall_time * 1000.0,
        )
    except Exception as exc:  # failures become records, sweeps continue
        return BenchRecord(
            **base,
            estimate=None,
            exact=None,
            abs_error=None,
            wall_time_ms=None,
            error=f"{type(exc).__name__}: {exc}",
        )


@dataclass(frozen=True)
class SweepSpec:
    param: str
    values: tuple
    algorithms: tuple[str, ...] = ("r3",)
    base: RunConfig = RunConfig()
    trials: int = 20
    seed_base: int = 0

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise ValueError(f"unknown sweep parameter {self.param!r}")
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")


_PARAM_TO_FIELD = {
    "n": "n",
    "d": "d",
    "precond-rank": "precond_rank",
    "precond-iters": "precond_iters",
    "probes": "s",
    "lanczos-iters": "t",
    "probe-kind": "probe_kind",
    "precond": "precond_kind",
}


def trial_seed(seed_base: int, value_index: int, trial: int) -> int:
    """Deterministic per-trial seed, shared by all algorithms in the trial."""
    ss = np.random.SeedSequence(seed_base, spawn_key=(value_index, trial))
    return int(ss.generate_state(1)[0])


def sweep_configs(spec: SweepSpec) -> list[RunConfig]:
    """The full, deterministically ordered config list for a sweep."""
    field_name = _PARAM_TO_FIELD[spec.param]
    configs = []
    for vi, value in enumerate(spec.values):
        for trial in range(spec.trials):
            seed = trial_seed(spec.seed_base, vi, trial)
            for algorithm in spec.algorithms:
                configs.append(
                    replace(spec.base, **{field_name: value}, algorithm=algorithm, seed=seed)
                )
    return configs


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[BenchRecord]:
    """Run every (value, trial, algorithm) combination; order is deterministic."""
    configs = sweep_configs(spec)
    if jobs <= 1:
        return [run_single(c) for c in configs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_single, configs))


def _format_cell(name: str, value):
    if value is None:
        return ""
    if name in _FLOAT_FIELDS:
        return f"{value:.17g}"
    return str(value)


def emit_csv(records, path) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(RECORD_FIELDS)
            for rec in records:
                d = asdict(rec)
                writer.writerow([_format_cell(name, d[name]) for name in RECORD_FIELDS])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def emit_json(records, path) -> None:
    try:
        with open(path, "w") as fh:
            json.dump([asdict(rec) for rec in records], fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write JSON to {path}: {exc}") from exc


def read_csv(path) -> list[BenchRecord]:
    """Parse a CSV written by emit_csv back into records (float round-trip exact)."""
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            kwargs = {}
            for name in RECORD_FIELDS:
                raw = row[name]
                if raw == "":
                    kwargs[name] = None
                elif name in _FLOAT_FIELDS:
                    kwargs[name] = float(raw)
                elif name in _INT_FIELDS:
                    kwargs[name] = int(raw)
                else:
                    kwargs[name] = raw
            records.append(BenchRecord(**kwargs))
    return records


def verify(tolerance: float = 1e-12) -> list[tuple[str, bool, str]]:
    """On-demand self-checks; returns (name, passed, detail) triples."""
    from . import rational
    from .lanczos import lanczos, multishift_solve
    from .linalg import cholesky_logdet as _cld
    from .precond import apply, apply_inverse, build_preconditioner

    checks = []

    # 1. embedded partial-fraction constants vs independent re-derivation
    worst = 0.0
    for order in (1, 3, 5):
        table = rational.partial_fraction(order)
        derived = rational.derive_partial_fraction(rational.closed_form(order))
        worst = max(
            worst,
            abs(table.offset - derived.offset),
            max(abs(a - b) for a, b in zip(table.poles, derived.poles)),
            max(abs(a - b) for a, b in zip(table.residues, derived.residues)),
        )
    checks.append(("partial_fraction_constants", worst <= tolerance, f"max abs dev {worst:.3e}"))

    # 2. antisymmetry r(z) = -r(1/z) and r(1) = 0
    rng = Rng(1234)
    z = rng.gen.uniform(1e-3, 100.0, size=1000)
    worst = 0.0
    for order in range(1, 7):
        r = rational.closed_form(order)
        lhs = rational.eval_closed(r, z)
        rhs = -rational.eval_closed(r, 1.0 / z)
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(lhs), 1e-30))))
        worst = max(worst, abs(rational.eval_closed(r, 1.0)))
    checks.append(("antisymmetry_and_normalization", worst <= 1e-11, f"max dev {worst:.3e}"))

    # 3. multi-shift solves are exact in the full Krylov space
    rng = Rng(99)
    n = 20
    G = rng.normal((n, n))
    M = G @ G.T + n * np.eye(n)
    v = rng.normal(n)
    pf = rational.partial_fraction(3)
    f = lanczos(lambda x: M @ x, v, n)
    worst = 0.0
    for alpha, w in zip(pf.poles, multishift_solve(f, [-a for a in pf.poles])):
        direct = np.linalg.solve(M - alpha * np.eye(n), v)
        worst = max(worst, float(np.linalg.norm(f.Q.T @ w - direct) / np.linalg.norm(v)))
    checks.append(("multishift_exactness", worst <= 1e-8, f"max rel residual {worst:.3e}"))

    # 4. Woodbury inverse and determinant-lemma logdet vs dense oracles
    rng = Rng(7)
    n, k = 60, 6
    worst_inv, worst_ld = 0.0, 0.0
    for kind_idx, kind in enumerate(PRECOND_KINDS):
        G = rng.normal((n, n))
        M = G @ G.T / n + np.eye(n)
        P = build_preconditioner(
            M, PreconditionerConfig(kind=kind, rank=k, num_iters=4, scale=0.5), rng.child(kind_idx)
        )
        dense = P.materialize()
        x = rng.normal(n)
        worst_inv = max(
            worst_inv,
            float(np.linalg.norm(apply(P, apply_inverse(P, x)) - x) / np.linalg.norm(x)),
        )
        ld = _cld(dense)
        worst_ld = max(worst_ld, abs(P.log_det - ld) / max(abs(ld), 1e-30))
    ok = worst_inv <= 1e-8 and worst_ld <= 1e-8
    checks.append(("woodbury_and_determinant_lemma", ok,
                   f"inv dev {worst_inv:.3e}, logdet dev {worst_ld:.3e}"))
    return checks
