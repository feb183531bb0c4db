"""The three experiment sweeps, with deterministic CSV output.

Raw rows follow a fixed schema (see CSV_COLUMNS); ambient and subspace
sweeps additionally write per-grid-point aggregates to a sibling
``*_agg.csv``.  Rows are emitted in (grid point, pattern, trial) order and
trials are seeded individually, so output is byte-identical for a given
seed no matter how many workers run (worker count comes from the
SUBSPACE_PERTURB_THREADS environment variable, default 1).
"""

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidDimensions
from .sampling import SamplingPattern
from .synth import TrialConfig, TrialRecord, run_trial, stream, uniform_open

CSV_COLUMNS = [
    "experiment", "pattern", "m", "r", "noise_std", "trial", "seed",
    "epsilon", "delta", "sigma_B", "error_dG", "bound", "sqrt_r", "status",
]

AGG_COLUMNS = [
    "experiment", "pattern", "m", "r", "noise_std", "n_trials", "n_ok", "n_degenerate",
    "error_mean", "error_median", "error_q25", "error_q75",
    "bound_mean", "bound_median", "bound_q25", "bound_q75",
    "sigma_B_mean", "sqrt_r",
]

DEFAULT_PATTERNS = ("omega1", "omega2")
DEFAULT_NOISE_RANGE = (1e-8, 1e-2)
DEFAULT_AMBIENT_GRID = tuple(range(10, 201, 10))
DEFAULT_SUBSPACE_GRID = tuple(range(3, 48, 2))


@dataclass(frozen=True)
class SweepSpec:
    """Configuration for one sweep.

    ``grid`` is the list of ambient dimensions (ambient sweep) or subspace
    dimensions (subspace sweep); the noise sweep has a single implicit grid
    point and instead draws noise_std per trial from ``noise_range`` on the
    chosen scale.
    """

    kind: str  # "noise" | "ambient" | "subspace"
    m: int | None = None
    r: int | None = None
    noise_std: float | None = None
    noise_range: tuple = DEFAULT_NOISE_RANGE
    noise_scale: str = "log"  # "log" | "linear"
    grid: tuple = ()
    trials: int = 100
    patterns: tuple = DEFAULT_PATTERNS
    base_seed: int = 0
    custom_pattern: SamplingPattern | None = None  # used with pattern name "file"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidDimensions(message)


def _validate_spec(spec: SweepSpec) -> None:
    _require(spec.kind in ("noise", "ambient", "subspace"), f"kind: unknown kind {spec.kind!r}")
    _require(spec.trials >= 1, f"trials: need >= 1, got {spec.trials}")
    _require(spec.base_seed >= 0, f"base_seed: need >= 0, got {spec.base_seed}")
    _require(len(spec.patterns) >= 1, "patterns: need at least one pattern")
    for p in spec.patterns:
        _require(p in ("omega1", "omega2", "file"), f"patterns: unknown pattern {p!r}")
        if p == "file":
            _require(spec.custom_pattern is not None, "custom_pattern: required for pattern 'file'")
    _require(spec.noise_scale in ("log", "linear"), f"noise_scale: unknown scale {spec.noise_scale!r}")
    if spec.kind == "noise":
        _require(spec.m is not None and spec.r is not None, "m, r: required for a noise sweep")
        _require(1 <= spec.r < spec.m, f"r: need 1 <= r < m, got m={spec.m}, r={spec.r}")
        lo, hi = spec.noise_range
        _require(0 < lo <= hi, f"noise_range: need 0 < lo <= hi, got ({lo}, {hi})")
    elif spec.kind == "ambient":
        _require(spec.r is not None, "r: required for an ambient sweep")
        _require(spec.noise_std is not None and spec.noise_std >= 0, "noise_std: required and >= 0")
        _require(len(spec.grid) >= 1, "grid: need at least one ambient dimension")
        for m in spec.grid:
            _require(1 <= spec.r < m, f"grid: point m={m} invalid for r={spec.r}")
    else:
        _require(spec.m is not None, "m: required for a subspace sweep")
        _require(spec.noise_std is not None and spec.noise_std >= 0, "noise_std: required and >= 0")
        _require(len(spec.grid) >= 1, "grid: need at least one subspace dimension")
        for r in spec.grid:
            _require(1 <= r < spec.m, f"grid: point r={r} invalid for m={spec.m}")


def _trial_seed(base_seed: int, point_index: int, trial_index: int) -> int:
    # One 64-bit word per (point, trial); patterns share it so the basis
    # draw is paired across patterns at the same trial index.
    seq = np.random.SeedSequence(entropy=(int(base_seed), point_index, trial_index))
    return int(seq.generate_state(1, np.uint64)[0])


def _worker_count() -> int:
    raw = os.environ.get("SUBSPACE_PERTURB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_all(configs):
    workers = _worker_count()
    if workers == 1 or len(configs) < 4:
        return [run_trial(cfg) for cfg in configs]
    chunk = max(1, len(configs) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_trial, configs, chunksize=chunk))


def _record_row(experiment: str, trial_index: int, rec: TrialRecord) -> dict:
    return {
        "experiment": experiment,
        "pattern": rec.pattern_kind,
        "m": rec.m,
        "r": rec.r,
        "noise_std": rec.noise_std,
        "trial": trial_index,
        "seed": rec.seed,
        "epsilon": rec.epsilon,
        "delta": rec.delta,
        "sigma_B": rec.sigma_B,
        "error_dG": rec.d_G,
        "bound": rec.bound,
        "sqrt_r": rec.sqrt_r,
        "status": rec.status,
    }


def sweep_noise(spec: SweepSpec) -> list[dict]:
    """Fixed (m, r); noise_std drawn per trial from the configured range.

    The per-trial noise level is shared across patterns, as is the basis
    draw, so pattern comparisons are paired.
    """
    _validate_spec(spec)
    if spec.kind != "noise":
        raise InvalidDimensions(f"kind: expected 'noise', got {spec.kind!r}")
    lo, hi = spec.noise_range
    u = uniform_open(stream(spec.base_seed, 2), spec.trials)
    if spec.noise_scale == "log":
        sigmas = np.exp(np.log(lo) + u * (np.log(hi) - np.log(lo)))
    else:
        sigmas = lo + u * (hi - lo)

    rows = []
    for pat in spec.patterns:
        configs = [
            TrialConfig(
                m=spec.m, r=spec.r, pattern_kind=pat, noise_std=float(sigmas[t]),
                seed=_trial_seed(spec.base_seed, 0, t), pattern=spec.custom_pattern,
            )
            for t in range(spec.trials)
        ]
        for t, rec in enumerate(_run_all(configs)):
            rows.append(_record_row("noise", t, rec))
    return rows


def _grid_sweep(spec: SweepSpec, experiment: str) -> list[dict]:
    rows = []
    for pat in spec.patterns:
        for point_index, value in enumerate(spec.grid):
            m = value if experiment == "ambient" else spec.m
            r = spec.r if experiment == "ambient" else value
            configs = [
                TrialConfig(
                    m=m, r=r, pattern_kind=pat, noise_std=spec.noise_std,
                    seed=_trial_seed(spec.base_seed, point_index, t),
                    pattern=spec.custom_pattern,
                )
                for t in range(spec.trials)
            ]
            for t, rec in enumerate(_run_all(configs)):
                rows.append(_record_row(experiment, t, rec))
    return rows


def sweep_ambient(spec: SweepSpec) -> list[dict]:
    """Fixed r and noise level; ambient dimension m varies over the grid."""
    _validate_spec(spec)
    if spec.kind != "ambient":
        raise InvalidDimensions(f"kind: expected 'ambient', got {spec.kind!r}")
    return _grid_sweep(spec, "ambient")


def sweep_subspace(spec: SweepSpec) -> list[dict]:
    """Fixed m and noise level; subspace dimension r varies over the grid."""
    _validate_spec(spec)
    if spec.kind != "subspace":
        raise InvalidDimensions(f"kind: expected 'subspace', got {spec.kind!r}")
    return _grid_sweep(spec, "subspace")


def aggregate_rows(rows: list[dict]) -> list[dict]:
    """Per (pattern, m, r, noise_std) summary of ok rows; degenerates counted."""
    groups = {}
    for row in rows:
        key = (row["experiment"], row["pattern"], row["m"], row["r"], row["noise_std"])
        groups.setdefault(key, []).append(row)

    out = []
    for key in sorted(groups):
        experiment, pattern, m, r, noise_std = key
        bucket = groups[key]
        ok = [row for row in bucket if row["status"] == "ok"]
        err = np.array([row["error_dG"] for row in ok])
        bnd = np.array([row["bound"] for row in ok])
        sig = np.array([row["sigma_B"] for row in ok])

        def q(a, p):
            return float(np.quantile(a, p)) if a.size else float("nan")

        out.append({
            "experiment": experiment,
            "pattern": pattern,
            "m": m,
            "r": r,
            "noise_std": noise_std,
            "n_trials": len(bucket),
            "n_ok": len(ok),
            "n_degenerate": len(bucket) - len(ok),
            "error_mean": float(err.mean()) if err.size else float("nan"),
            "error_median": q(err, 0.5),
            "error_q25": q(err, 0.25),
            "error_q75": q(err, 0.75),
            "bound_mean": float(bnd.mean()) if bnd.size else float("nan"),
            "bound_median": q(bnd, 0.5),
            "bound_q25": q(bnd, 0.25),
            "bound_q75": q(bnd, 0.75),
            "sigma_B_mean": float(sig.mean()) if sig.size else float("nan"),
            "sqrt_r": math.sqrt(r),
        })
    return out


def _format(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_rows(path, rows: list[dict], columns: list[str]) -> None:
    """Write dict rows as CSV with a fixed column order and repr'd floats."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format(row[c]) for c in columns])


def agg_path(raw_path) -> Path:
    raw_path = Path(raw_path)
    return raw_path.with_name(raw_path.stem + "_agg" + raw_path.suffix)


def run_sweep(spec: SweepSpec, out_path) -> list[dict]:
    """Run the sweep for ``spec``, write raw rows (and aggregates for grid
    sweeps) to ``out_path``, and return the raw rows."""
    runners = {"noise": sweep_noise, "ambient": sweep_ambient, "subspace": sweep_subspace}
    rows = runners[spec.kind](spec)
    write_rows(out_path, rows, CSV_COLUMNS)
    if spec.kind in ("ambient", "subspace"):
        write_rows(agg_path(out_path), aggregate_rows(rows), AGG_COLUMNS)
    return rows
