"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Phase diagram sweeps: every grid cell is integrated from a slightly perturbed polarized state and classified.

Cells are independent. A cell's result depends only on the grid and its own position (its seed is derived from
both), so the map is the same for any worker count and any evaluation order.
"""

from multiprocessing import Pool
from typing import List, Optional, Tuple

import click

from . import logger
from . import phasemap_txt_parser
from . import semiclassical
from . import utils
from .classifier import PhaseLabel, PhasePoint, classify
from .phasemap import (
    STATUS_ERROR_PREFIX,
    STATUS_OK,
    STATUS_RETRIED,
    PhaseMap,
    Provenance,
    SweepCell,
    SweepGrid,
)
from . import errors

CellTask = Tuple[SweepGrid, int, int]


def _classify_cell(grid: SweepGrid, i, j, horizon) -> PhasePoint:
    settings = grid.integrator
    state0 = semiclassical.perturbed_initial(settings.epsilon, grid.cell_seed(i, j))
    traj = semiclassical.integrate(
        state0, grid.model_at(i, j), horizon, settings.dt_sample, settings.rel_tol, settings.abs_tol
    )
    return classify(traj, grid.thresholds)


def evaluate_cell(task: CellTask) -> SweepCell:
    """
    perturbed start, integration and classification of one cell

    an Unresolved result is retried once with twice the horizon, errors end up in the cell's status
    """
    grid, i, j = task
    horizon = grid.integrator.horizon
    try:
        point = _classify_cell(grid, i, j, horizon)
        if point.label is not PhaseLabel.UNRESOLVED:
            return SweepCell(point, horizon, STATUS_OK)
        horizon = 2.0 * horizon
        return SweepCell(_classify_cell(grid, i, j, horizon), horizon, STATUS_RETRIED)
    except click.ClickException as e:
        message = e.format_message().replace(",", ";").replace("\n", " ")
        return SweepCell(PhasePoint(PhaseLabel.UNRESOLVED, 0.0, 0.0, 0.0), horizon, STATUS_ERROR_PREFIX + message)


def _compute(phase_map: PhaseMap, indices: List[Tuple[int, int]], workers, checkpoint_path, checkpoint_every):
    grid = phase_map.grid
    tasks = [(grid, i, j) for i, j in indices]
    total = len(tasks)

    def store(done, index, cell):
        phase_map.cells[index] = cell
        if cell.failed:
            logger.error(f"cell {index}: {cell.status}")
        logger.progress(done, total)
        if checkpoint_path and checkpoint_every > 0 and done % checkpoint_every == 0 and done < total:
            phasemap_txt_parser.write_phase_map(phase_map, checkpoint_path)
            logger.debug(f"checkpoint after {done} cells")

    if workers <= 1:
        for done, (index, task) in enumerate(zip(indices, tasks), start=1):
            store(done, index, evaluate_cell(task))
        return

    with Pool(workers) as pool:
        # imap keeps input order, so checkpoints hold a prefix of the work list
        for done, (index, cell) in enumerate(zip(indices, pool.imap(evaluate_cell, tasks, chunksize=1)), start=1):
            store(done, index, cell)


def run_sweep(
    grid: SweepGrid, workers=1, checkpoint_path: Optional[str] = None, checkpoint_every=0, timestamps=False
) -> PhaseMap:
    """
    classify every cell of the grid

    with a checkpoint path the partially filled map is written there every checkpoint_every cells, and
    resume_sweep can continue from that file. Start and completion times are recorded only with timestamps,
    otherwise the file depends on nothing but the grid and repeated sweeps write identical bytes
    """
    if workers < 1:
        raise errors.ParameterError(f"workers must be at least 1, got {workers}")
    phase_map = PhaseMap(grid=grid, provenance=Provenance.new(grid, _stamp(timestamps)))
    n_ratio, n_lambda = grid.shape
    logger.verbose(f"sweeping {n_ratio} x {n_lambda} cells on {workers} worker(s), config {grid.config_hash()}")
    _compute(phase_map, grid.indices(), workers, checkpoint_path, checkpoint_every)
    phase_map.provenance = _completed(phase_map.provenance, timestamps)
    return phase_map


def resume_sweep(partial_path, grid: SweepGrid, workers=1, checkpoint_every=0, timestamps=False) -> PhaseMap:
    """
    continue a sweep from a (partial) map file: only missing and Unresolved cells are computed

    the file has to belong to the same grid, otherwise GridMismatchError is raised and the file is left alone
    """
    phase_map = phasemap_txt_parser.parse(partial_path)
    expected = grid.config_hash()
    if phase_map.provenance.config_hash != expected:
        raise errors.GridMismatchError(phase_map.provenance.config_hash, expected)

    pending = phase_map.pending()
    if not pending:
        logger.verbose("map is complete, nothing to compute")
        return phase_map
    logger.verbose(f"resuming: {len(pending)} of {len(grid.indices())} cells to compute")
    _compute(phase_map, pending, workers, partial_path, checkpoint_every)
    phase_map.provenance = _completed(phase_map.provenance, timestamps)
    return phase_map


def _stamp(timestamps) -> str:
    return utils.datetime_now_isostring() if timestamps else ""


def _completed(provenance: Provenance, timestamps) -> Provenance:
    return Provenance(
        tool_name=provenance.tool_name,
        tool_version=provenance.tool_version,
        config_hash=provenance.config_hash,
        created=provenance.created,
        completed=_stamp(timestamps) or None,
        schema_version=provenance.schema_version,
    )
