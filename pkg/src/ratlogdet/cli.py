"""Command-line interface: single log-det runs, benchmark sweeps, and the
self-check report."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .bench import (
    RECORD_FIELDS,
    RunConfig,
    SWEEP_PARAMS,
    SweepSpec,
    emit_csv,
    emit_json,
    run_single,
    run_sweep,
    verify,
)
from .estimators import ALGORITHMS
from .precond import PRECOND_KINDS
from .probes import PROBE_KINDS


def _add_common_estimator_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kernel", choices=["rbf", "matern52"], default="rbf")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--jitter", type=float, default=1e-6)
    p.add_argument("--probes", type=int, default=35)
    p.add_argument("--probe-kind", choices=list(PROBE_KINDS), default="rademacher")
    p.add_argument("--lanczos-iters", type=int, default=20)
    p.add_argument("--precond", choices=list(PRECOND_KINDS), default="rand-svd")
    p.add_argument("--precond-rank", type=int, default=25)
    p.add_argument("--precond-iters", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)


def _config_from_args(args, algorithm: str) -> RunConfig:
    return RunConfig(
        kernel_family=args.kernel,
        n=args.n,
        d=args.d,
        jitter=args.jitter,
        algorithm=algorithm,
        probe_kind=args.probe_kind,
        s=args.probes,
        t=args.lanczos_iters,
        precond_kind=args.precond,
        precond_rank=args.precond_rank,
        precond_iters=args.precond_iters,
        seed=args.seed,
        exact_cutoff=getattr(args, "exact_cutoff", 5000),
    )


def _parse_values(param: str, raw: str):
    values = [v.strip() for v in raw.split(",") if v.strip()]
    if not values:
        raise ValueError("--values must be a nonempty comma-separated list")
    if param in ("probe-kind", "precond"):
        return tuple(values)
    return tuple(int(v) for v in values)


def cmd_logdet(args) -> int:
    record = run_single(_config_from_args(args, args.algorithm))
    d = asdict(record)
    if record.error is not None:
        print(f"error: {record.error}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(d, indent=1))
    elif args.format == "csv":
        print(",".join(RECORD_FIELDS))
        print(",".join("" if d[k] is None else (f"{d[k]:.17g}" if isinstance(d[k], float) else str(d[k]))
                       for k in RECORD_FIELDS))
    else:
        print(f"algorithm   : {record.algorithm}")
        print(f"estimate    : {record.estimate:.12f}")
        if record.exact is not None:
            print(f"exact       : {record.exact:.12f}")
            print(f"abs error   : {record.abs_error:.6e}")
        print(f"wall time   : {record.wall_time_ms:.1f} ms")
    return 0


def cmd_bench(args) -> int:
    try:
        values = _parse_values(args.sweep, args.values)
        algorithms = tuple(a.strip() for a in args.algorithms.split(",") if a.strip())
        spec = SweepSpec(
            param=args.sweep,
            values=values,
            algorithms=algorithms,
            base=_config_from_args(args, algorithms[0]),
            trials=args.trials,
            seed_base=args.seed,
        )
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    records = run_sweep(spec, jobs=args.jobs)
    if args.out.endswith(".json"):
        emit_json(records, args.out)
    else:
        emit_csv(records, args.out)
    failures = [r for r in records if r.error is not None]
    print(f"wrote {len(records)} records to {args.out} ({len(failures)} failed)")
    return 1 if failures else 0


def cmd_verify(args) -> int:
    checks = verify(tolerance=args.tolerance)
    ok = True
    for name, passed, detail in checks:
        status = "PASS" if passed else "FAIL"
        print(f"{status}  {name}: {detail}")
        ok = ok and passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratlogdet",
                                     description="Stochastic log-determinant estimation benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("logdet", help="estimate one log-determinant")
    _add_common_estimator_args(p)
    p.add_argument("--algorithm", choices=list(ALGORITHMS), default="r3")
    p.add_argument("--format", choices=["csv", "json", "plain"], default="plain")
    p.set_defaults(func=cmd_logdet)

    p = sub.add_parser("bench", help="run a benchmark sweep")
    _add_common_estimator_args(p)
    p.add_argument("--sweep", choices=list(SWEEP_PARAMS), required=True)
    p.add_argument("--values", required=True, help="comma-separated sweep values")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--algorithms", default="r3", help="comma-separated algorithm list")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--exact-cutoff", type=int, default=5000)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="run the built-in consistency checks")
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
