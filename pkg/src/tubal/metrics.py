"""Quality metrics and the run-log CSV row.

The CSV schema is stable; columns never reorder:
experiment, solver, psnr_db, rse, f_measure, cluster_accuracy,
iterations, wall_time_s, converged.  Absent metrics are left empty.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from itertools import permutations

import numpy as np

__all__ = [
    "psnr",
    "rse",
    "f_measure",
    "cluster_accuracy",
    "MetricsRow",
    "append_metrics_row",
    "CSV_COLUMNS",
]


def _finite_array(a, name):
    arr = np.asarray(a, dtype=np.float64)
    if arr.size == 0:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


def psnr(xhat, xref, peak: float = 1.0) -> float:
    """10 * log10(peak^2 / MSE); returns inf when the inputs coincide."""
    xhat = _finite_array(xhat, "xhat")
    xref = _finite_array(xref, "xref")
    if xhat.shape != xref.shape:
        raise ValueError(f"shape mismatch: {xhat.shape} vs {xref.shape}")
    if peak <= 0:
        raise ValueError(f"peak must be positive, got {peak}")
    mse = float(((xhat - xref) ** 2).mean())
    if mse == 0.0:
        return math.inf
    return float(10.0 * np.log10(peak * peak / mse))


def rse(xhat, xref) -> float:
    """Relative squared error ||xhat - xref||_F / ||xref||_F."""
    xhat = _finite_array(xhat, "xhat")
    xref = _finite_array(xref, "xref")
    if xhat.shape != xref.shape:
        raise ValueError(f"shape mismatch: {xhat.shape} vs {xref.shape}")
    denom = float(np.linalg.norm(xref.ravel()))
    if denom == 0.0:
        raise ValueError("reference must be nonzero")
    return float(np.linalg.norm((xhat - xref).ravel()) / denom)


def f_measure(mask_hat, mask_ref) -> float:
    """F1 = 2PR / (P + R) of a detected support against the truth.

    Zero when there are no true positives; an empty reference with an
    empty detection scores 1.
    """
    mh = np.asarray(mask_hat).astype(bool)
    mr = np.asarray(mask_ref).astype(bool)
    if mh.shape != mr.shape:
        raise ValueError(f"shape mismatch: {mh.shape} vs {mr.shape}")
    tp = float(np.logical_and(mh, mr).sum())
    detected = float(mh.sum())
    actual = float(mr.sum())
    if actual == 0 and detected == 0:
        return 1.0
    if tp == 0.0:
        return 0.0
    precision = tp / detected
    recall = tp / actual
    return float(2.0 * precision * recall / (precision + recall))


def cluster_accuracy(labels_hat, labels_ref) -> float:
    """Best label-permutation agreement rate (exhaustive up to 6 labels)."""
    lh = np.asarray(labels_hat).ravel()
    lr = np.asarray(labels_ref).ravel()
    if lh.shape != lr.shape or lh.size == 0:
        raise ValueError("label vectors must be nonempty and the same length")
    hat_ids = np.unique(lh)
    ref_ids = np.unique(lr)
    if len(hat_ids) > 6 or len(ref_ids) > 6:
        raise ValueError("exhaustive permutation matching is limited to 6 clusters")
    # permute the larger label set onto the smaller
    best = 0.0
    hat_index = {v: i for i, v in enumerate(hat_ids)}
    hat_codes = np.array([hat_index[v] for v in lh])
    pool = list(ref_ids)
    while len(pool) < len(hat_ids):
        pool.append(None)
    for perm in permutations(pool, len(hat_ids)):
        mapped = np.array([perm[c] for c in hat_codes], dtype=object)
        score = float(np.mean([m == r for m, r in zip(mapped, lr)]))
        best = max(best, score)
    return best


CSV_COLUMNS = [
    "experiment",
    "solver",
    "psnr_db",
    "rse",
    "f_measure",
    "cluster_accuracy",
    "iterations",
    "wall_time_s",
    "converged",
]


@dataclass
class MetricsRow:
    """One run-log line; None fields serialize as empty cells."""

    experiment: str
    solver: str
    psnr_db: float | None = None
    rse: float | None = None
    f_measure: float | None = None
    cluster_accuracy: float | None = None
    iterations: int | None = None
    wall_time_s: float | None = None
    converged: bool | None = None

    def as_record(self) -> dict:
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, float):
                if math.isinf(v):
                    return "inf"
                return repr(v)
            return str(v)

        return {col: fmt(getattr(self, col)) for col in CSV_COLUMNS}


def append_metrics_row(path: str, row: MetricsRow) -> None:
    """Append one row, writing the header first on a fresh file."""
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        if fresh:
            writer.writeheader()
        writer.writerow(row.as_record())
