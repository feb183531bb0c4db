"""Render error/bound figures from sweep CSVs.

Input is the raw sweep table written by the subspace-perturb CLI (one row
per trial, fixed column set).  Three figure kinds mirror the three sweeps:

* noise    -- scatter of error and bound against the noise level, log-log
* ambient  -- median line + interquartile band against the ambient dimension
* subspace -- same, against the subspace dimension

Every figure carries the error, the bound, and the sqrt(r) ceiling, with one
line style per sampling pattern.  Colors are fixed per series name so the
same quantity looks the same across figures.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "subspace-figures"  # deterministic SVG ids

import matplotlib.pyplot as plt
import numpy as np

REQUIRED_COLUMNS = [
    "experiment", "pattern", "m", "r", "noise_std", "trial", "seed",
    "epsilon", "delta", "sigma_B", "error_dG", "bound", "sqrt_r", "status",
]

KINDS = ("noise", "ambient", "subspace")

SERIES_COLORS = {"error": "tab:blue", "bound": "tab:red", "ceiling": "tab:gray"}
PATTERN_STYLES = {
    "omega1": {"linestyle": "-", "marker": "o"},
    "omega2": {"linestyle": "--", "marker": "^"},
}
_FALLBACK_STYLE = {"linestyle": ":", "marker": "s"}


class SchemaError(Exception):
    """The CSV is missing a required column or holds the wrong experiment."""


class EmptyInput(Exception):
    """No usable (status == ok) rows to plot."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    kind: str  # "noise" | "ambient" | "subspace"
    output_path: str
    format: str | None = None  # "svg" | "png"; default from the output suffix


def load_rows(path) -> list[dict]:
    """Read the sweep CSV, checking the schema and parsing numeric fields."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in REQUIRED_COLUMNS:
            if column not in header:
                raise SchemaError(f"missing column {column!r} in {path}")
        rows = []
        for record in reader:
            row = dict(record)
            for key in ("m", "r", "trial"):
                row[key] = int(record[key])
            for key in ("noise_std", "epsilon", "delta", "sigma_B",
                        "error_dG", "bound", "sqrt_r"):
                row[key] = float(record[key]) if record[key] != "" else float("nan")
            rows.append(row)
    return rows


def _style(pattern: str) -> dict:
    return PATTERN_STYLES.get(pattern, _FALLBACK_STYLE)


def _ok_rows(rows, kind):
    experiments = {row["experiment"] for row in rows}
    if experiments and experiments != {kind}:
        raise SchemaError(
            f"experiment column holds {sorted(experiments)}, expected [{kind!r}]"
        )
    ok = [row for row in rows if row["status"] == "ok"]
    if not ok:
        raise EmptyInput("no rows with status == ok")
    return ok


def _render_noise(ax, rows):
    patterns = sorted({row["pattern"] for row in rows})
    for pattern in patterns:
        sel = [row for row in rows if row["pattern"] == pattern]
        x = np.array([row["noise_std"] for row in sel])
        style = _style(pattern)
        for series, field in (("error", "error_dG"), ("bound", "bound")):
            y = np.array([row[field] for row in sel])
            ax.scatter(
                x, y, s=9, alpha=0.55, color=SERIES_COLORS[series],
                marker=style["marker"], linewidths=0,
                label=f"{series} ({pattern})",
            )
    ceiling = rows[0]["sqrt_r"]
    ax.axhline(ceiling, color=SERIES_COLORS["ceiling"], linestyle="-.",
               label="sqrt(r) ceiling")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("noise standard deviation")


def _render_grid(ax, rows, x_field):
    patterns = sorted({row["pattern"] for row in rows})
    for pattern in patterns:
        sel = [row for row in rows if row["pattern"] == pattern]
        grid = sorted({row[x_field] for row in sel})
        style = _style(pattern)
        for series, field in (("error", "error_dG"), ("bound", "bound")):
            med, q25, q75 = [], [], []
            for value in grid:
                ys = np.array([row[field] for row in sel if row[x_field] == value])
                med.append(np.median(ys))
                q25.append(np.quantile(ys, 0.25))
                q75.append(np.quantile(ys, 0.75))
            color = SERIES_COLORS[series]
            ax.plot(grid, med, color=color, linestyle=style["linestyle"],
                    marker=style["marker"], markersize=4,
                    label=f"{series} ({pattern})")
            ax.fill_between(grid, q25, q75, color=color, alpha=0.15, linewidth=0)

    # ceiling: one value per grid point (constant for ambient sweeps, a curve
    # over r for subspace sweeps)
    grid = sorted({row[x_field] for row in rows})
    ceiling = [
        max(row["sqrt_r"] for row in rows if row[x_field] == value) for value in grid
    ]
    ax.plot(grid, ceiling, color=SERIES_COLORS["ceiling"], linestyle="-.",
            label="sqrt(r) ceiling")
    ax.set_yscale("log")
    ax.set_xlabel("ambient dimension m" if x_field == "m" else "subspace dimension r")


def render(spec: FigureSpec) -> Path:
    """Render the figure for ``spec`` and return the output path."""
    if spec.kind not in KINDS:
        raise ValueError(f"unknown figure kind {spec.kind!r}")
    rows = _ok_rows(load_rows(spec.input_csv), spec.kind)

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    try:
        if spec.kind == "noise":
            _render_noise(ax, rows)
        elif spec.kind == "ambient":
            _render_grid(ax, rows, "m")
        else:
            _render_grid(ax, rows, "r")
        ax.set_ylabel("chordal distance")
        m, r = rows[0]["m"], rows[0]["r"]
        titles = {
            "noise": f"error vs noise level (m={m}, r={r})",
            "ambient": f"error vs ambient dimension (r={r})",
            "subspace": f"error vs subspace dimension (m={m})",
        }
        ax.set_title(titles[spec.kind])
        ax.legend(fontsize=8, ncol=2)
        fig.tight_layout()

        out = Path(spec.output_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        fmt = spec.format or (out.suffix.lstrip(".").lower() or "svg")
        if fmt not in ("svg", "png"):
            raise ValueError(f"unsupported format {fmt!r}")
        # strip volatile metadata so reruns produce identical bytes
        metadata = {"Date": None} if fmt == "svg" else {"Software": None}
        fig.savefig(out, format=fmt, dpi=150, metadata=metadata)
    finally:
        plt.close(fig)
    return out
