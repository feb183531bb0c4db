"""Command-line front end.

Exit codes: 0 success, 1 usage or input-format error, 2 numerical failure
(rank-deficient projections, identifiability failure, bad denominators).
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import golden as golden_mod
from .bounds import BoundReport, bound_report, theorem1_bound
from .errors import SubspaceError
from .estimator import ProjectionSet, estimate_subspace, build_normal_matrix
from .linalg import SubspaceBasis
from .matrixio import read_matrix, write_matrix
from .sampling import SamplingPattern, gen_omega1, gen_omega2, validate
from .sweeps import (
    DEFAULT_AMBIENT_GRID,
    DEFAULT_NOISE_RANGE,
    DEFAULT_SUBSPACE_GRID,
    SweepSpec,
    run_sweep,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the CLI contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_grid(text: str) -> tuple:
    """Parse '10:200:10' (inclusive range) or '10,20,50' into an int tuple."""
    text = text.strip()
    if ":" in text:
        parts = [int(x) for x in text.split(":")]
        if len(parts) == 2:
            start, stop, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            start, stop, step = parts
        else:
            raise ValueError(f"bad grid {text!r}")
        if step < 1 or stop < start:
            raise ValueError(f"bad grid {text!r}")
        return tuple(range(start, stop + 1, step))
    return tuple(int(x) for x in text.split(","))


def _load_projections(pattern: SamplingPattern, directory) -> ProjectionSet:
    """Read V_<i>.csv (and optional Z_<i>.csv) files for every projection."""
    directory = Path(directory)
    v_list, z_list = [], []
    for i in range(pattern.n_projections):
        v_path = directory / f"V_{i}.csv"
        if not v_path.exists():
            raise ValueError(f"missing projection file {v_path}")
        v_list.append(read_matrix(v_path))
        z_path = directory / f"Z_{i}.csv"
        if z_path.exists():
            z_list.append(read_matrix(z_path))
    if z_list and len(z_list) != pattern.n_projections:
        raise ValueError("found some but not all Z_<i>.csv files")
    if z_list:
        u_list = tuple(v - z for v, z in zip(v_list, z_list))
        return ProjectionSet(
            pattern=pattern, v_list=tuple(v_list), u_list=u_list, z_list=tuple(z_list)
        )
    return ProjectionSet(pattern=pattern, v_list=tuple(v_list))


def _cmd_gen_pattern(args) -> int:
    gen = gen_omega1 if args.type == 1 else gen_omega2
    pattern = gen(args.m, args.r)
    text = json.dumps(pattern.to_dict())
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def _cmd_validate(args) -> int:
    pattern = SamplingPattern.load(args.pattern)
    report = validate(pattern, mode=args.mode, rng_seed=args.seed)
    payload = {
        "c1_ok": report.c1_ok,
        "c2_ok": report.c2_ok,
        "c3_ok": report.c3_ok,
        "c3_method": report.c3_method,
        "violating_subset": list(report.violating_subset) if report.violating_subset else None,
        "all_ok": report.all_ok,
    }
    print(json.dumps(payload))
    return 0


def _cmd_estimate(args) -> int:
    pattern = SamplingPattern.load(args.pattern)
    ps = _load_projections(pattern, args.projections)
    basis = estimate_subspace(build_normal_matrix(ps, use="observed"))
    write_matrix(args.out, basis.basis)
    return 0


def _cmd_bound(args) -> int:
    pattern = SamplingPattern.load(args.pattern)
    ps = _load_projections(pattern, args.projections)
    truth = None
    if args.truth:
        truth = SubspaceBasis.from_span(read_matrix(args.truth))
    report = bound_report(ps, ground_truth=truth)
    if args.epsilon is not None or args.delta is not None:
        # what-if overrides
        epsilon = args.epsilon if args.epsilon is not None else report.epsilon
        delta = args.delta if args.delta is not None else report.delta
        bound = None
        if epsilon is not None:
            bound = theorem1_bound(epsilon, delta, report.sigma_B, pattern.m, pattern.r)
        report = BoundReport(
            epsilon=epsilon, delta=delta, sigma_B=report.sigma_B,
            bound=bound, sqrt_r=report.sqrt_r, d_G=report.d_G,
        )
    payload = {
        "epsilon": report.epsilon,
        "delta": report.delta,
        "sigma_B": report.sigma_B,
        "bound": report.bound,
        "sqrt_r": report.sqrt_r,
        "d_G": report.d_G,
    }
    if args.json:
        print(json.dumps(payload))
    else:
        for key, value in payload.items():
            print(f"{key} = {value}")
        per_eps = theorem1_bound(1.0, report.delta, report.sigma_B, pattern.m, pattern.r)
        print(f"bound per unit epsilon = {per_eps}")
    return 0


def _cmd_sweep(args) -> int:
    patterns = tuple(args.patterns.split(","))
    common = dict(patterns=patterns, trials=args.trials, base_seed=args.seed)
    if args.sweep_kind == "noise":
        spec = SweepSpec(
            kind="noise", m=args.m, r=args.r,
            noise_range=(args.noise_lo, args.noise_hi),
            noise_scale=args.noise_scale, **common,
        )
    elif args.sweep_kind == "ambient":
        spec = SweepSpec(
            kind="ambient", r=args.r, noise_std=args.noise_std,
            grid=_parse_grid(args.grid), **common,
        )
    else:
        spec = SweepSpec(
            kind="subspace", m=args.m, noise_std=args.noise_std,
            grid=_parse_grid(args.grid), **common,
        )
    rows = run_sweep(spec, args.out)
    n_deg = sum(1 for row in rows if row["status"] != "ok")
    print(f"wrote {len(rows)} rows to {args.out} ({n_deg} degenerate)")
    return 0


def _cmd_golden(args) -> int:
    lines = golden_mod.format_golden_lines()
    for line in lines:
        print(line)
    return 0 if all(ok for _, ok, _ in golden_mod.golden_checks()) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subspace-perturb")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-pattern", help="emit a sampling pattern as JSON")
    p.add_argument("--type", type=int, choices=(1, 2), required=True,
                   help="1 = ones block over identity, 2 = staircase band")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--out", help="write to file instead of stdout")
    p.set_defaults(func=_cmd_gen_pattern)

    p = sub.add_parser("validate", help="check conditions C1-C3 on a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--mode", choices=("auto", "brute", "generic"), default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("estimate", help="estimate the subspace from projection files")
    p.add_argument("--pattern", required=True)
    p.add_argument("--projections", required=True, help="directory with V_<i>.csv files")
    p.add_argument("--out", required=True, help="output CSV for the m x r basis")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("bound", help="compute the error bound report")
    p.add_argument("--pattern", required=True)
    p.add_argument("--projections", required=True)
    p.add_argument("--truth", help="CSV with a basis of the true subspace")
    p.add_argument("--epsilon", type=float, help="override the noise level")
    p.add_argument("--delta", type=float, help="override the signal floor")
    p.add_argument("--json", action="store_true", help="emit a single JSON object")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("sweep", help="run a Monte-Carlo sweep and write CSV")
    sweep_sub = p.add_subparsers(dest="sweep_kind", required=True, parser_class=_Parser)

    q = sweep_sub.add_parser("noise", help="vary the noise level at fixed (m, r)")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--trials", type=int, default=1000)
    q.add_argument("--noise-lo", type=float, default=DEFAULT_NOISE_RANGE[0])
    q.add_argument("--noise-hi", type=float, default=DEFAULT_NOISE_RANGE[1])
    q.add_argument("--noise-scale", choices=("log", "linear"), default="log")

    q = sweep_sub.add_parser("ambient", help="vary m at fixed r and noise")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--noise-std", type=float, default=1e-5)
    q.add_argument("--grid", default=":".join(map(str, (DEFAULT_AMBIENT_GRID[0], DEFAULT_AMBIENT_GRID[-1], 10))))
    q.add_argument("--trials", type=int, default=100)

    q = sweep_sub.add_parser("subspace", help="vary r at fixed m and noise")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--noise-std", type=float, default=1e-5)
    q.add_argument("--grid", default=":".join(map(str, (DEFAULT_SUBSPACE_GRID[0], DEFAULT_SUBSPACE_GRID[-1], 2))))
    q.add_argument("--trials", type=int, default=100)

    for q in sweep_sub.choices.values():
        q.add_argument("--patterns", default="omega1,omega2",
                       help="comma-separated subset of {omega1, omega2}")
        q.add_argument("--seed", type=int, required=True)
        q.add_argument("--out", required=True)
        q.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("golden", help="run the built-in golden example checks")
    p.set_defaults(func=_cmd_golden)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SubspaceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
