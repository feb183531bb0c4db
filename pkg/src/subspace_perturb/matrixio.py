"""Plain-CSV matrix files: one row per line, '.' decimal, no header."""

import csv
from pathlib import Path

import numpy as np


def read_matrix(path) -> np.ndarray:
    """Read a dense matrix from CSV, rejecting ragged or non-numeric rows."""
    rows = []
    width = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, record in enumerate(csv.reader(fh), start=1):
            if not record:
                continue
            if width is None:
                width = len(record)
            elif len(record) != width:
                raise ValueError(
                    f"{path}: ragged row at line {lineno} "
                    f"({len(record)} fields, expected {width})"
                )
            try:
                rows.append([float(x) for x in record])
            except ValueError as exc:
                raise ValueError(f"{path}: non-numeric entry at line {lineno}") from exc
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    M = np.asarray(rows, dtype=np.float64)
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{path}: matrix contains non-finite entries")
    return M


def write_matrix(path, M) -> None:
    M = np.asarray(M, dtype=np.float64)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in np.atleast_2d(M):
            writer.writerow([repr(float(x)) for x in row])
