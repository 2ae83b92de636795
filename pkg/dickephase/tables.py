"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Plain-text result tables (trajectory, spectrum, boundary, expectation, comparison, calibration).

Every table starts with '# dickephase <kind>' and '# schema_version: N' lines, optional '# key: value'
metadata, then a comma separated column header and the rows. Missing values are empty fields.
"""

import dataclasses
import json
import math
import os
from typing import Dict, List, Sequence

import numpy as np

from . import errors
from . import logger
from .__version__ import dickephase_schema_version, dickephase_supported_schema_versions
from .classifier import PhasePoint, Spectrum
from .model import ModelParams, to_linear_khz
from .quantum import CompareReport, ExpectationSeries
from .semiclassical import Trajectory
from .stability import BoundaryCurve

TRAJECTORY_COLUMNS = ["t_s", "re_alpha", "im_alpha", "re_beta", "im_beta", "w", "abs_alpha_sq"]
SPECTRUM_COLUMNS = ["freq_hz", "power"]
BOUNDARY_COLUMNS = ["ratio", "lambda_star_khz", "fixed_point_kind", "converged"]
EXPECTATION_COLUMNS = ["t_s", "re_alpha", "im_alpha", "re_beta", "im_beta", "w", "n_photon"]
COMPARE_COLUMNS = ["n_atoms", "quantum_plateau", "semiclassical_plateau", "gap"]
CALIBRATION_COLUMNS = ["quantity", "value", "unit"]
CLASSIFICATION_COLUMNS = [
    "label",
    "mean_photon_proxy",
    "rel_std",
    "w_final",
    "peak_freq_hz",
    "peak_prominence",
    "horizon_s",
]


def _field(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "" if math.isnan(value) else repr(float(value))
    return str(value)


def write_table(file_path, kind, columns: Sequence[str], rows, metadata: Dict[str, str] = None):
    logger.debug(f'writing {kind} table "{os.path.basename(file_path)}"...')
    with open(file_path, "w", encoding="utf-8", newline="\n") as file:
        file.write(f"# dickephase {kind}\n")
        file.write(f"# schema_version: {dickephase_schema_version}\n")
        for key, value in (metadata or {}).items():
            file.write(f"# {key}: {value}\n")
        file.write(",".join(columns) + "\n")
        for row in rows:
            file.write(",".join(_field(value) for value in row) + "\n")


def read_table(file_path, kind):
    """(metadata dict, column names, rows as lists of strings)"""
    with open(file_path, "r", encoding="utf-8") as file:
        lines = [line.rstrip("\n") for line in file]
    if not lines or lines[0] != f"# dickephase {kind}":
        raise errors.ParameterError(f"{file_path} is not a {kind} table")
    metadata = {}
    position = 1
    while position < len(lines) and lines[position].startswith("# "):
        key, _, value = lines[position][2:].partition(":")
        metadata[key.strip()] = value.strip()
        position += 1
    try:
        version = int(metadata.get("schema_version", ""))
    except ValueError:
        raise errors.ParameterError(f"{file_path} has no schema version")
    if version not in dickephase_supported_schema_versions:
        raise errors.SchemaVersionError(file_path, version, dickephase_supported_schema_versions)
    if position >= len(lines):
        raise errors.ParameterError(f"{file_path} has no column header")
    columns = lines[position].split(",")
    rows = [line.split(",") for line in lines[position + 1 :] if line.strip()]
    for row in rows:
        if len(row) != len(columns):
            raise errors.ParameterError(f"{file_path}: row with {len(row)} fields, expected {len(columns)}")
    return metadata, columns, rows


def _trajectory_rows(traj: Trajectory):
    abs_alpha_sq = traj.abs_alpha_sq
    for k in range(len(traj)):
        a, b = traj.alpha[k], traj.beta[k]
        yield [traj.t[k], a.real, a.imag, b.real, b.imag, traj.w[k], abs_alpha_sq[k]]


def _trajectory_metadata(traj: Trajectory):
    return {
        "model": json.dumps(dataclasses.asdict(traj.model), sort_keys=True),
        "rel_tol": repr(traj.rel_tol),
        "abs_tol": repr(traj.abs_tol),
    }


def write_trajectory(traj: Trajectory, file_path):
    write_table(file_path, "trajectory", TRAJECTORY_COLUMNS, _trajectory_rows(traj), _trajectory_metadata(traj))


def write_trajectory_json(traj: Trajectory, file_path):
    payload = {
        "schema_version": dickephase_schema_version,
        "table": "trajectory",
        "model": dataclasses.asdict(traj.model),
        "rel_tol": traj.rel_tol,
        "abs_tol": traj.abs_tol,
        "columns": TRAJECTORY_COLUMNS,
        "rows": [[float(x) for x in row] for row in _trajectory_rows(traj)],
    }
    with open(file_path, "w", encoding="utf-8") as file:
        json.dump(payload, file)


def _trajectory_from_columns(model, rel_tol, abs_tol, data: np.ndarray) -> Trajectory:
    return Trajectory(
        t=data[:, 0],
        alpha=data[:, 1] + 1j * data[:, 2],
        beta=data[:, 3] + 1j * data[:, 4],
        w=data[:, 5].copy(),
        model=model,
        rel_tol=rel_tol,
        abs_tol=abs_tol,
    )


def read_trajectory(file_path) -> Trajectory:
    """reads a trajectory table or its json variant"""
    if os.path.splitext(file_path)[1].lower() == ".json":
        with open(file_path, "r", encoding="utf-8") as file:
            payload = json.load(file)
        version = payload.get("schema_version")
        if version not in dickephase_supported_schema_versions:
            raise errors.SchemaVersionError(file_path, version, dickephase_supported_schema_versions)
        data = np.array(payload["rows"], dtype=float).reshape(-1, len(TRAJECTORY_COLUMNS))
        return _trajectory_from_columns(
            ModelParams(**payload["model"]), payload["rel_tol"], payload["abs_tol"], data
        )

    metadata, columns, rows = read_table(file_path, "trajectory")
    if columns != TRAJECTORY_COLUMNS:
        raise errors.ParameterError(f"{file_path}: unexpected columns {columns}")
    try:
        model = ModelParams(**json.loads(metadata["model"]))
        data = np.array(rows, dtype=float).reshape(-1, len(TRAJECTORY_COLUMNS))
        return _trajectory_from_columns(model, float(metadata["rel_tol"]), float(metadata["abs_tol"]), data)
    except (KeyError, ValueError, TypeError) as e:
        raise errors.ParameterError(f"{file_path}: unreadable trajectory ({e})")


def write_spectrum(spec: Spectrum, file_path):
    rows = zip(spec.freqs, spec.power)
    write_table(file_path, "spectrum", SPECTRUM_COLUMNS, rows, {"window_length_s": repr(spec.window_length)})


def write_boundary(curve: BoundaryCurve, file_path):
    rows = []
    for ratio, threshold, converged in zip(curve.ratios, curve.thresholds, curve.converged):
        lambda_khz = None if math.isnan(threshold) else to_linear_khz(float(threshold))
        rows.append([ratio, lambda_khz, curve.kind.value, bool(converged)])
    write_table(file_path, "boundary", BOUNDARY_COLUMNS, rows)


def write_expectations(series: ExpectationSeries, file_path):
    alpha, beta, w = series.alpha, series.beta, series.w
    rows = (
        [series.t[k], alpha[k].real, alpha[k].imag, beta[k].real, beta[k].imag, w[k], series.exp_n[k]]
        for k in range(len(series.t))
    )
    metadata = {
        "n_atoms": str(series.n_atoms),
        "max_trace_error": repr(float(np.max(series.trace_error))),
        "max_hermiticity_error": repr(float(np.max(series.hermiticity_error))),
        "min_eigenvalue": repr(float(np.min(series.min_eigenvalue))),
    }
    write_table(file_path, "expectation", EXPECTATION_COLUMNS, rows, metadata)


def write_compare(report: CompareReport, file_path):
    rows = [[g.n_atoms, g.quantum_plateau, g.semiclassical_plateau, g.gap] for g in report.gaps]
    metadata = {"monotone": _field(report.monotone), "shrinks": _field(report.shrinks)}
    write_table(file_path, "compare", COMPARE_COLUMNS, rows, metadata)


def write_phase_point(point: PhasePoint, horizon, file_path):
    row = [
        point.label.value,
        point.mean_photon_proxy,
        point.rel_std,
        point.w_final,
        point.peak_freq,
        point.peak_prominence,
        horizon,
    ]
    write_table(file_path, "classification", CLASSIFICATION_COLUMNS, [row])


def write_calibration(entries: List[tuple], file_path):
    write_table(file_path, "calibration", CALIBRATION_COLUMNS, entries)
