"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Adaptive stepping loop of the mean-field integrator.

scipy's DOP853 (explicit Runge-Kutta 8(5,3)) is stepped by hand so that samples can be taken from the dense
output of every step on a fixed grid t_k = k * dt_sample, without storing the internal steps.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import DOP853

from . import errors
from . import logger


@dataclass(frozen=True, eq=False)
class SampledRun:
    t: np.ndarray
    samples: np.ndarray
    n_steps: int


def sample_count(horizon, dt_sample):
    """number of grid intervals needed so that the last sample lies at or after the horizon"""
    return max(1, int(math.ceil(horizon / dt_sample - 1e-9)))


def march(
    fun: Callable,
    y0: np.ndarray,
    horizon: float,
    dt_sample: float,
    rel_tol: float,
    abs_tol: float,
    observe: Optional[Callable] = None,
    min_step: float = 0.0,
) -> SampledRun:
    """
    integrate dy/dt = fun(t, y) from 0 and sample on a uniform grid

    observe(t, y) maps a sampled state to the row that is recorded, the state itself if not given. It may raise
    to stop the run (e.g. when a monitored quantity leaves its range).
    A failed step or a step below min_step raises StiffnessError, a non-finite state raises DivergenceError.
    """
    if observe is None:

        def observe(_, y):
            return y

    n_intervals = sample_count(horizon, dt_sample)
    t_grid = np.arange(n_intervals + 1) * dt_sample
    t_end = float(t_grid[-1])

    y0 = np.asarray(y0)
    first = np.asarray(observe(0.0, y0))
    samples = np.empty((n_intervals + 1,) + first.shape, dtype=first.dtype)
    samples[0] = first
    next_index = 1

    # overflow inside a trial step surfaces as a non-finite state and is reported as DivergenceError
    with np.errstate(over="ignore", invalid="ignore"):
        solver = DOP853(fun, 0.0, y0, t_bound=t_end, rtol=rel_tol, atol=abs_tol)
        n_steps = 0
        while solver.status == "running":
            t_before = solver.t
            message = solver.step()
            n_steps += 1
            if solver.status == "failed":
                logger.debug(f"DOP853 failed after {n_steps} steps: {message}")
                raise errors.StiffnessError(t_before)
            if not np.all(np.isfinite(solver.y)):
                raise errors.DivergenceError(solver.t)
            if min_step > 0 and solver.status == "running" and solver.h_abs < min_step:
                raise errors.StiffnessError(solver.t)

            # every grid time covered by this step
            stop_index = next_index
            while stop_index <= n_intervals and t_grid[stop_index] <= solver.t:
                stop_index += 1
            if stop_index > next_index:
                dense = solver.dense_output()
                for k in range(next_index, stop_index):
                    y_k = solver.y if t_grid[k] == solver.t else dense(t_grid[k])
                    samples[k] = observe(float(t_grid[k]), y_k)
                next_index = stop_index

    logger.debug(f"DOP853 finished at t = {solver.t:.6g} s after {n_steps} steps")
    return SampledRun(t=t_grid, samples=samples, n_steps=n_steps)
