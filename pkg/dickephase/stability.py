"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Linear stability of the two trivial fixed points (alpha, beta, w) = (0, 0, +-1/2) and phase boundaries
located by bisection on the sign of the largest growth rate.
"""

import math
from dataclasses import dataclass
from enum import Enum, unique
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from . import errors
from . import logger
from .model import ModelParams, to_angular
from .semiclassical import SemiclassicalState, trivial_state, vector_field

# eigenvalues below this (times kappa) in magnitude belong to the conserved spin norm direction
ZERO_MODE_THRESHOLD = 1e-9
# growth rates below this (times kappa) count as neutral, not growing
GROWTH_TOLERANCE = 1e-9
DEFAULT_TOL = to_angular(0.01)
FINITE_DIFFERENCE_STEP = 1e-7


@unique
class FixedPointKind(Enum):
    NORMAL_TRIVIAL = "NormalTrivial"
    INVERTED_TRIVIAL = "InvertedTrivial"

    @property
    def w(self) -> float:
        return 0.5 if self is FixedPointKind.NORMAL_TRIVIAL else -0.5

    @classmethod
    def from_string(cls, text) -> "FixedPointKind":
        lookup = {"normal": cls.NORMAL_TRIVIAL, "inverted": cls.INVERTED_TRIVIAL}
        for kind in cls:
            lookup[kind.value.lower()] = kind
        try:
            return lookup[text.lower()]
        except KeyError:
            raise errors.ParameterError(f"Unknown fixed point '{text}'")


@dataclass(frozen=True)
class FixedPoint:
    state: SemiclassicalState
    kind: FixedPointKind

    def __post_init__(self):
        if self.state.alpha != 0 or self.state.beta != 0 or self.state.w != self.kind.w:
            raise errors.ParameterError(f"{self.state} is not the {self.kind.value} fixed point")

    @classmethod
    def of(cls, kind: FixedPointKind) -> "FixedPoint":
        return cls(trivial_state(kind.w), kind)


@dataclass(frozen=True, eq=False)
class StabilityReport:
    eigenvalues: np.ndarray
    max_growth: float
    stable: bool
    # max_growth above the numerical noise floor
    growing: bool


@dataclass(frozen=True)
class BisectionResult:
    value: float
    iterations: int


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """threshold couplings lambda* = max(lambda_+, lambda_-) per ratio, NaN where no threshold was found"""

    ratios: np.ndarray
    thresholds: np.ndarray
    kind: FixedPointKind
    converged: np.ndarray

    def __post_init__(self):
        if not (len(self.ratios) == len(self.thresholds) == len(self.converged)):
            raise errors.ParameterError("boundary curve arrays must have equal length")


def jacobian_at(fp: FixedPoint, model: ModelParams) -> np.ndarray:
    """
    Jacobian of the real system (Re alpha, Im alpha, Re beta, Im beta, w) at a trivial fixed point

    dw/dt is quadratic in the deviations, so row and column of w vanish.
    """
    w0 = fp.state.w
    diff = model.lambda_minus - model.lambda_plus
    total = model.lambda_minus + model.lambda_plus
    return np.array(
        [
            [-model.kappa, model.omega, 0.0, diff, 0.0],
            [-model.omega, -model.kappa, -total, 0.0, 0.0],
            [0.0, -2.0 * w0 * diff, 0.0, model.omega0, 0.0],
            [2.0 * w0 * total, 0.0, -model.omega0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0],
        ]
    )


def numerical_jacobian(state: SemiclassicalState, model: ModelParams, step=FINITE_DIFFERENCE_STEP) -> np.ndarray:
    """central difference Jacobian of the equations of motion at any state"""
    field = vector_field(model)
    y0 = state.as_vector()
    jac = np.empty((5, 5))
    for j in range(5):
        dy = np.zeros(5)
        dy[j] = step
        jac[:, j] = (field(0.0, y0 + dy) - field(0.0, y0 - dy)) / (2.0 * step)
    return jac


def max_growth_rate(fp: FixedPoint, model: ModelParams) -> StabilityReport:
    """eigenvalues of the Jacobian and the largest real part outside the structural zero mode"""
    jac = jacobian_at(fp, model)
    try:
        eigenvalues = linalg.eigvals(jac)
    except (linalg.LinAlgError, ValueError) as e:
        raise errors.EigensolverError(jac, str(e))
    if not np.all(np.isfinite(eigenvalues)):
        raise errors.EigensolverError(jac, "non-finite eigenvalues")

    zero_mode = np.abs(eigenvalues) < ZERO_MODE_THRESHOLD * model.kappa
    if not np.any(zero_mode):
        raise errors.EigensolverError(jac, "no zero eigenvalue for the conserved spin norm direction")
    max_growth = float(np.max(eigenvalues[~zero_mode].real))
    logger.debug(f"eigenvalues at {fp.kind.value}: {np.array2string(eigenvalues, precision=4)}")
    return StabilityReport(
        eigenvalues=eigenvalues,
        max_growth=max_growth,
        stable=max_growth < 0,
        growing=max_growth > GROWTH_TOLERANCE * model.kappa,
    )


def bisect_sign_change(predicate: Callable[[float], bool], lo, hi, tol) -> Optional[BisectionResult]:
    """
    bisection on a boolean predicate over [lo, hi] until the bracket is narrower than tol

    returns the midpoint of the final bracket, None if the predicate has the same value at both ends
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise errors.InvalidBracketError(lo, hi)
    if not tol > 0:
        raise errors.ParameterError(f"tolerance must be positive, got {tol!r}")
    at_lo = predicate(lo)
    if predicate(hi) == at_lo:
        return None
    iterations = 0
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid) == at_lo:
            lo = mid
        else:
            hi = mid
        iterations += 1
    return BisectionResult(0.5 * (lo + hi), iterations)


def boundary_bisect(
    fp: FixedPoint,
    model_template: ModelParams,
    ratio: float,
    bracket: Tuple[float, float],
    tol=DEFAULT_TOL,
) -> Optional[float]:
    """the lambda_max at which the fixed point turns unstable along the ray of constant ratio, or None"""

    def growing(lambda_max):
        return max_growth_rate(fp, model_template.with_ratio(ratio, lambda_max)).growing

    result = bisect_sign_change(growing, bracket[0], bracket[1], tol)
    if result is None:
        return None
    logger.debug(f"ratio {ratio:.6g}: threshold after {result.iterations} bisection steps")
    return result.value


def ratio_boundary_bisect(
    fp: FixedPoint,
    model_template: ModelParams,
    lambda_max: float,
    bracket: Tuple[float, float] = (0.0, 1.0),
    tol=1e-4,
) -> Optional[float]:
    """the coupling ratio at which the fixed point changes stability at fixed lambda_max, or None"""

    def growing(ratio):
        return max_growth_rate(fp, model_template.with_ratio(ratio, lambda_max)).growing

    result = bisect_sign_change(growing, bracket[0], bracket[1], tol)
    return None if result is None else result.value


def trace_boundary(
    fp: FixedPoint,
    model_template: ModelParams,
    ratios: Sequence[float],
    bracket: Tuple[float, float],
    tol=DEFAULT_TOL,
) -> BoundaryCurve:
    """boundary_bisect for every ratio, a failing ratio is recorded as missing and does not stop the curve"""
    thresholds = np.full(len(ratios), np.nan)
    converged = np.zeros(len(ratios), dtype=bool)
    for i, ratio in enumerate(ratios):
        try:
            value = boundary_bisect(fp, model_template, ratio, bracket, tol)
        except errors.NumericalFailure as e:
            logger.error(f"ratio {ratio:.6g}: {e.format_message()}")
            continue
        if value is not None:
            thresholds[i] = value
            converged[i] = True
    logger.verbose(f"traced {int(np.sum(converged))} of {len(ratios)} boundary points at {fp.kind.value}")
    return BoundaryCurve(np.asarray(ratios, dtype=float), thresholds, fp.kind, converged)
