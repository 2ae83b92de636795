"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Reading and writing phase map files.

A phase map file is a comma separated table framed by '#' lines:

    # dickephase phase map
    # schema_version: 1
    # tool: dickephase 1.0.0
    # config_hash: <xxh128 of the grid>
    # created: 2026-01-15T13:00:00+00:00      (empty unless the sweep records timestamps)
    # completed: 2026-01-15T13:20:00+00:00    (likewise, and empty while the sweep is running)
    # grid: {...json...}
    ratio,lambda_max_khz,label,mean_alpha_sq,rel_std,w_final,peak_freq_khz,peak_prominence,horizon_ms,status
    0.0,0.0,Normal,0.0,0.0,0.5,,,20,ok
    ...
    # end: 6156 rows

Only computed cells have a row. Floats are written so that they read back bit for bit: plain repr, and for the
kHz and ms columns a decimal shift of that repr.
"""

import json
import os
from decimal import Decimal, InvalidOperation

from packaging.version import InvalidVersion, Version

from . import errors
from . import logger
from . import utils
from .__version__ import dickephase_supported_schema_versions, dickephase_tool_version
from .classifier import PhaseLabel, PhasePoint
from .model import to_linear_khz
from .phasemap import PhaseMap, Provenance, SweepCell, SweepGrid

MAGIC_LINE = "# dickephase phase map"
COLUMNS = [
    "ratio",
    "lambda_max_khz",
    "label",
    "mean_alpha_sq",
    "rel_std",
    "w_final",
    "peak_freq_khz",
    "peak_prominence",
    "horizon_ms",
    "status",
]
HEADER_KEYS = ["schema_version", "tool", "config_hash", "created", "completed", "grid"]


def _num(value) -> str:
    return repr(float(value))


def _shifted(value, exponent) -> str:
    """value * 10**exponent as an exact decimal string"""
    return format(Decimal(repr(float(value))).scaleb(exponent), "f")


def _unshifted(text, exponent) -> float:
    return float(Decimal(text).scaleb(-exponent))


def _axis_keys(grid: SweepGrid):
    ratio_keys = {_num(r): i for i, r in enumerate(grid.ratio_axis)}
    lambda_keys = {_num(to_linear_khz(x)): j for j, x in enumerate(grid.lambda_axis)}
    return ratio_keys, lambda_keys


def _line_for_cell(grid: SweepGrid, i, j, cell: SweepCell) -> str:
    point = cell.point
    status = cell.status.replace(",", ";").replace("\n", " ")
    fields = [
        _num(grid.ratio_axis[i]),
        _num(to_linear_khz(grid.lambda_axis[j])),
        point.label.value,
        _num(point.mean_photon_proxy),
        _num(point.rel_std),
        _num(point.w_final),
        "" if point.peak_freq is None else _shifted(point.peak_freq, -3),
        "" if point.peak_prominence is None else _num(point.peak_prominence),
        _shifted(cell.horizon, 3),
        status,
    ]
    return ",".join(fields)


def write_phase_map(phase_map: PhaseMap, file_path: str):
    """writes the map next to file_path first, then moves it into place"""
    logger.debug(f'writing "{os.path.basename(file_path)}"...')
    provenance = phase_map.provenance
    grid = phase_map.grid
    lines = [
        MAGIC_LINE,
        f"# schema_version: {provenance.schema_version}",
        f"# tool: {provenance.tool_name} {provenance.tool_version}",
        f"# config_hash: {provenance.config_hash}",
        f"# created: {provenance.created}",
        f"# completed: {provenance.completed or ''}",
        "# grid: " + json.dumps(grid.to_payload(), sort_keys=True, separators=(",", ":")),
        ",".join(COLUMNS),
    ]
    rows = 0
    for index in grid.indices():
        cell = phase_map.cells.get(index)
        if cell is not None:
            lines.append(_line_for_cell(grid, index[0], index[1], cell))
            rows += 1
    lines.append(f"# end: {rows} rows")

    directory_path = os.path.dirname(file_path)
    if directory_path and not os.path.isdir(directory_path):
        os.makedirs(directory_path)
    tmp_path = file_path + ".tmp"
    with open(tmp_path, "w", encoding="utf-8", newline="\n") as file:
        file.write("\n".join(lines) + "\n")
    os.replace(tmp_path, file_path)


def _lines_with_offsets(data: bytes, file_path):
    """(byte offset, text) for every line, the last line must be terminated"""
    result = []
    offset = 0
    while offset < len(data):
        end = data.find(b"\n", offset)
        if end < 0:
            raise errors.CorruptPhaseMapError(file_path, offset, "unterminated last line, the file is truncated")
        try:
            text = data[offset:end].decode("utf-8")
        except UnicodeDecodeError:
            raise errors.CorruptPhaseMapError(file_path, offset, "line is not valid utf-8")
        result.append((offset, text.rstrip("\r")))
        offset = end + 1
    return result


def _header_value(lines, position, key, file_path):
    if position >= len(lines):
        raise errors.CorruptPhaseMapError(file_path, lines[-1][0] if lines else 0, f"missing '{key}' header line")
    offset, text = lines[position]
    prefix = f"# {key}:"
    if not text.startswith(prefix):
        raise errors.CorruptPhaseMapError(file_path, offset, f"expected '{key}' header line")
    return offset, text[len(prefix) :].strip()


def _cell_from_line(text, offset, file_path) -> SweepCell:
    fields = text.split(",")
    if len(fields) != len(COLUMNS):
        raise errors.CorruptPhaseMapError(file_path, offset, f"expected {len(COLUMNS)} columns, got {len(fields)}")
    try:
        label = PhaseLabel(fields[2])
        point = PhasePoint(
            label=label,
            mean_photon_proxy=float(fields[3]),
            rel_std=float(fields[4]),
            w_final=float(fields[5]),
            peak_freq=None if fields[6] == "" else _unshifted(fields[6], -3),
            peak_prominence=None if fields[7] == "" else float(fields[7]),
        )
        horizon = _unshifted(fields[8], 3)
    except (ValueError, InvalidOperation, errors.ParameterError) as e:
        raise errors.CorruptPhaseMapError(file_path, offset, f"unreadable row ({e})")
    return SweepCell(point, horizon, fields[9])


def _note_tool_version(tool_text):
    parts = tool_text.split()
    if len(parts) != 2:
        return
    try:
        file_version = Version(parts[1])
        current_version = Version(dickephase_tool_version)
    except InvalidVersion:
        logger.debug(f"cannot compare tool versions: {tool_text}")
        return
    if file_version < current_version:
        logger.verbose(f"map was written by {tool_text}, an older version of this tool")
    elif file_version > current_version:
        logger.warning(f"map was written by {tool_text}, a newer version of this tool")


def parse(file_path) -> PhaseMap:
    """reads a phase map file, complete or partial"""
    logger.debug(f'parsing "{os.path.basename(file_path)}"...')
    with open(file_path, "rb") as file:
        data = file.read()

    lines = _lines_with_offsets(data, file_path)
    if len(lines) == 0 or lines[0][1] != MAGIC_LINE:
        raise errors.CorruptPhaseMapError(file_path, 0, "not a phase map file")

    offset, version_text = _header_value(lines, 1, "schema_version", file_path)
    try:
        schema_version = int(version_text)
    except ValueError:
        raise errors.CorruptPhaseMapError(file_path, offset, f"schema version '{version_text}' is not a number")
    if schema_version not in dickephase_supported_schema_versions:
        raise errors.SchemaVersionError(file_path, schema_version, dickephase_supported_schema_versions)

    header = {}
    for position, key in enumerate(HEADER_KEYS[1:], start=2):
        header[key] = _header_value(lines, position, key, file_path)

    tool_offset, tool_text = header["tool"]
    tool_parts = tool_text.split()
    if len(tool_parts) != 2:
        raise errors.CorruptPhaseMapError(file_path, tool_offset, "tool line must hold name and version")
    _note_tool_version(tool_text)

    for key in ("created", "completed"):
        offset, value = header[key]
        if value:
            try:
                utils.datetime_from_isostring(value)
            except ValueError:
                raise errors.CorruptPhaseMapError(file_path, offset, f"'{value}' is not a timestamp")

    grid_offset, grid_text = header["grid"]
    try:
        grid = SweepGrid.from_payload(json.loads(grid_text))
    except (ValueError, KeyError, TypeError, errors.ParameterError) as e:
        raise errors.CorruptPhaseMapError(file_path, grid_offset, f"unreadable grid ({e})")
    hash_offset, recorded_hash = header["config_hash"]
    if grid.config_hash() != recorded_hash:
        raise errors.CorruptPhaseMapError(file_path, hash_offset, "config hash does not match the grid")

    column_position = len(HEADER_KEYS) + 1
    if column_position >= len(lines) or lines[column_position][1] != ",".join(COLUMNS):
        offset = lines[column_position][0] if column_position < len(lines) else len(data)
        raise errors.CorruptPhaseMapError(file_path, offset, "missing or unexpected column header")

    ratio_keys, lambda_keys = _axis_keys(grid)
    cells = {}
    trailer = None
    for offset, text in lines[column_position + 1 :]:
        if trailer is not None:
            if text.strip():
                raise errors.CorruptPhaseMapError(file_path, offset, "content after the end line")
            continue
        if text.startswith("# end:"):
            trailer = (offset, text)
            continue
        fields = text.split(",")
        index = (ratio_keys.get(fields[0]), lambda_keys.get(fields[1] if len(fields) > 1 else None))
        if None in index:
            raise errors.CorruptPhaseMapError(file_path, offset, "row does not belong to a grid cell")
        if index in cells:
            raise errors.CorruptPhaseMapError(file_path, offset, "duplicate row for a grid cell")
        cells[index] = _cell_from_line(text, offset, file_path)

    if trailer is None:
        raise errors.CorruptPhaseMapError(file_path, len(data), "missing end line, the file is truncated")
    offset, text = trailer
    try:
        count = int(text[len("# end:") :].split()[0])
    except (ValueError, IndexError):
        raise errors.CorruptPhaseMapError(file_path, offset, "unreadable end line")
    if count != len(cells):
        raise errors.CorruptPhaseMapError(file_path, offset, f"end line announces {count} rows, found {len(cells)}")

    provenance = Provenance(
        tool_name=tool_parts[0],
        tool_version=tool_parts[1],
        config_hash=recorded_hash,
        created=header["created"][1],
        completed=header["completed"][1] or None,
        schema_version=schema_version,
    )
    return PhaseMap(grid=grid, provenance=provenance, cells=cells)
