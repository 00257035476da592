"""JSON/CSV encodings for isometries, channels and experiment reports.

Complex numbers are written as ``[re, im]`` pairs throughout.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .analysis import ResidualSummary
from .deletion import DeletionIsometry, QuantumChannel


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def matrix_to_json(m: np.ndarray) -> list:
    m = np.asarray(m)
    if m.ndim == 1:
        return [complex_to_json(z) for z in m]
    return [matrix_to_json(row) for row in m]


def matrix_from_json(raw) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def isometry_to_json(iso: DeletionIsometry) -> dict:
    return {
        "draw": iso.draw.labels(),
        "states": {k: matrix_to_json(getattr(iso.draw, k)[1].amps) for k in ("sigma2", "sigma3", "sigma4", "sigma5")},
        "input_basis": ["HH", "HV", "VH", "VV"],
        "output_dims": [2, 2, 3],
        "matrix": matrix_to_json(iso.matrix),
    }


def channel_to_json(ch: QuantumChannel) -> dict:
    return {"d_in": ch.d_in, "d_out": ch.d_out, "choi": matrix_to_json(ch.choi)}


def report(experiment: str, seed: int | None, params: dict, results: dict) -> dict:
    return {"experiment": experiment, "seed": seed, "params": params, "results": results}


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


CSV_FIELDS = ["trial", "sigma1", "sigma2", "sigma3", "sigma4", "sigma5", "residual"]


def residual_rows_csv(summary: ResidualSummary) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for i, rep in enumerate(summary.reports):
        labels = rep.draw.labels()
        w.writerow([i, rep.sigma1[0], labels["sigma2"], labels["sigma3"], labels["sigma4"], labels["sigma5"], repr(rep.residual)])
    return buf.getvalue()
