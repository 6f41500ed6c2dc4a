"""Text file formats: grids, complex vectors, and results tables.

Vectors are one "re im" pair per line, grids one instant per line, both
with 17 significant digits so doubles round-trip bit-exactly. Results are
CSV with a single '#'-prefixed metadata line ahead of the header.
"""

from __future__ import annotations

import csv
import io
import math
import os

import numpy as np

from .bench import TrialResult

_FMT = "%.17g"

RESULT_COLUMNS = (
    "p", "eta", "mu", "method", "trial",
    "error_linear", "error_db", "total_flops", "cg_iterations", "seed",
)


def write_vector_file(path, values):
    arr = np.asarray(values, dtype=np.complex128)
    with open(path, "w") as fh:
        for z in arr:
            fh.write(f"{_FMT % z.real} {_FMT % z.imag}\n")


def read_vector_file(path) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 're im', got {line!r}")
            rows.append(complex(float(parts[0]), float(parts[1])))
    if not rows:
        raise ValueError(f"{path}: no vector entries found")
    return np.asarray(rows, dtype=np.complex128)


def write_grid_file(path, instants):
    arr = np.asarray(instants, dtype=np.float64)
    with open(path, "w") as fh:
        for t in arr:
            fh.write(f"{_FMT % t}\n")


def read_grid_file(path) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 1:
                raise ValueError(f"{path}:{lineno}: expected one instant per line, got {line!r}")
            rows.append(float(parts[0]))
    if not rows:
        raise ValueError(f"{path}: no grid entries found")
    return np.asarray(rows, dtype=np.float64)


def _format_field(value):
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "-inf" if value < 0 else "inf"
        return _FMT % value
    return str(value)


def write_results_csv(path, records: list[TrialResult], metadata: dict):
    meta = " ".join(f"{k}={v}" for k, v in metadata.items() if v is not None)
    with open(path, "w", newline="") as fh:
        fh.write(f"# {meta}\n")
        writer = csv.writer(fh)
        writer.writerow(RESULT_COLUMNS)
        for r in records:
            writer.writerow([_format_field(getattr(r, col)) for col in RESULT_COLUMNS])


def read_results_csv(path):
    """Parse a results file back into (records, metadata)."""
    with open(path) as fh:
        first = fh.readline()
        metadata = {}
        if first.startswith("#"):
            for token in first[1:].split():
                if "=" in token:
                    k, v = token.split("=", 1)
                    metadata[k] = v
            body = fh.read()
        else:
            body = first + fh.read()
    records = []
    reader = csv.DictReader(io.StringIO(body))
    for row in reader:
        records.append(TrialResult(
            p=int(row["p"]),
            eta=int(row["eta"]) if row["eta"] else None,
            mu=float(row["mu"]) if row["mu"] else None,
            method=row["method"],
            trial=int(row["trial"]),
            error_linear=float(row["error_linear"]),
            error_db=float(row["error_db"]),
            total_flops=int(row["total_flops"]),
            cg_iterations=int(row["cg_iterations"]) if row["cg_iterations"] else None,
            seed=int(row["seed"]),
        ))
    return records, metadata


def default_out_dir() -> str:
    """Output directory for results, overridable by one environment variable."""
    return os.environ.get("NUFFT1D_OUT_DIR", ".")
