"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Mean-field equations of motion in the scaled variables

    alpha = <a> / sqrt(2N),  beta = <J_-> / (2N),  w = <J_z> / (2N)

and their integration into uniformly sampled trajectories.
"""

import cmath
import dataclasses
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import errors
from . import logger
from . import stepper
from .model import ModelParams

# |beta|^2 + w^2 on the maximal spin sphere
SPIN_SPHERE = 0.25
NORM_DRIFT_LIMIT = 1e-6
MAX_TOLERANCE = 1e-3
# a run whose spin norm drifts past NORM_DRIFT_LIMIT is repeated with ten times tighter tolerances, down to these
MIN_REL_TOL = 1e-12
MIN_ABS_TOL = 1e-14
TOLERANCE_TIGHTENING = 10.0


@dataclass(frozen=True)
class SemiclassicalState:
    alpha: complex
    beta: complex
    w: float

    def __post_init__(self):
        for value in (self.alpha, self.beta, self.w):
            if not cmath.isfinite(value):
                raise errors.ParameterError(f"state must be finite, got {self}")

    @classmethod
    def from_vector(cls, y) -> "SemiclassicalState":
        return cls(complex(y[0], y[1]), complex(y[2], y[3]), float(y[4]))

    def as_vector(self) -> np.ndarray:
        return np.array([self.alpha.real, self.alpha.imag, self.beta.real, self.beta.imag, self.w])

    def negated(self) -> "SemiclassicalState":
        """image under the (alpha, beta) -> (-alpha, -beta) symmetry"""
        return SemiclassicalState(-self.alpha, -self.beta, self.w)

    @property
    def reported_w(self) -> float:
        return min(0.5, max(-0.5, self.w))

    def on_sphere(self, tol=1e-9) -> bool:
        return abs(spin_norm(self) - SPIN_SPHERE) <= tol


@dataclass(frozen=True)
class StateDerivative:
    d_alpha: complex
    d_beta: complex
    d_w: float


def trivial_state(w=0.5) -> SemiclassicalState:
    return SemiclassicalState(0j, 0j, w)


def spin_norm(state: SemiclassicalState) -> float:
    """|beta|^2 + w^2, a first integral of the equations of motion"""
    return abs(state.beta) ** 2 + state.w**2


def rhs(state: SemiclassicalState, model: ModelParams) -> StateDerivative:
    """
    d alpha/dt = -kappa alpha - i omega alpha - i lambda_- beta - i lambda_+ beta*
    d beta/dt  = -i omega0 beta + 2i lambda_- alpha w + 2i lambda_+ alpha* w
    d w/dt     = i lambda_- (alpha* beta - alpha beta*) + i lambda_+ (alpha beta - alpha* beta*)
    """
    a, b, w = state.alpha, state.beta, state.w
    lp, lm = model.lambda_plus, model.lambda_minus
    d_alpha = -model.kappa * a - 1j * model.omega * a - 1j * lm * b - 1j * lp * b.conjugate()
    d_beta = -1j * model.omega0 * b + 2j * lm * a * w + 2j * lp * a.conjugate() * w
    # i (z - z*) = -2 Im z, real without rounding
    d_w = -2.0 * lm * (a.conjugate() * b).imag - 2.0 * lp * (a * b).imag
    return StateDerivative(d_alpha, d_beta, d_w)


def vector_field(model: ModelParams):
    """rhs in the real coordinates (Re alpha, Im alpha, Re beta, Im beta, w), as needed by the stepper"""
    kappa, omega, omega0 = model.kappa, model.omega, model.omega0
    diff = model.lambda_minus - model.lambda_plus
    total = model.lambda_minus + model.lambda_plus
    two_lm, two_lp = 2.0 * model.lambda_minus, 2.0 * model.lambda_plus

    def field(_, y):
        ar, ai, br, bi, w = y
        return np.array(
            [
                -kappa * ar + omega * ai + diff * bi,
                -kappa * ai - omega * ar - total * br,
                omega0 * bi - 2.0 * w * diff * ai,
                -omega0 * br + 2.0 * w * total * ar,
                two_lm * (ai * br - ar * bi) - two_lp * (ar * bi + ai * br),
            ]
        )

    return field


def perturbed_initial(epsilon=1e-5, seed: Optional[int] = None) -> SemiclassicalState:
    """
    start state next to the fully polarized, empty cavity state (0, 0, 1/2)

    The perturbation sits on beta with magnitude epsilon, w is lowered so the state stays on the spin sphere.
    Without a seed beta is real and positive, with a seed it gets a uniformly random phase.
    """
    if not 0 < epsilon < 1e-2:
        raise errors.ParameterError(f"epsilon must lie in (0, 1e-2), got {epsilon!r}")
    beta = complex(epsilon)
    if seed is not None:
        phase = np.random.default_rng(seed).uniform(0.0, 2.0 * math.pi)
        beta = epsilon * cmath.exp(1j * phase)
    return SemiclassicalState(0j, beta, math.sqrt(SPIN_SPHERE - epsilon * epsilon))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    uniformly sampled mean-field trajectory

    t -- sample times in s, t[k] = k * dt_sample
    alpha, beta -- complex arrays
    w -- real array, unclamped
    """

    t: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    w: np.ndarray
    model: ModelParams
    rel_tol: float
    abs_tol: float

    def __post_init__(self):
        n = len(self.t)
        if n < 2:
            raise errors.TrajectoryTooShortError(n, 2)
        if not (len(self.alpha) == len(self.beta) == len(self.w) == n):
            raise errors.ParameterError("trajectory arrays must have equal length")
        if self.dt_sample <= 0:
            raise errors.ParameterError("trajectory sample spacing must be positive")

    def __len__(self):
        return len(self.t)

    @property
    def dt_sample(self) -> float:
        return float(self.t[1] - self.t[0])

    @property
    def horizon(self) -> float:
        return float(self.t[-1])

    @property
    def abs_alpha_sq(self) -> np.ndarray:
        return self.alpha.real**2 + self.alpha.imag**2

    @property
    def spin_norm(self) -> np.ndarray:
        return self.beta.real**2 + self.beta.imag**2 + self.w**2

    @property
    def max_norm_drift(self) -> float:
        norm = self.spin_norm
        return float(np.max(np.abs(norm - norm[0])))

    def state_at(self, index) -> SemiclassicalState:
        return SemiclassicalState(complex(self.alpha[index]), complex(self.beta[index]), float(self.w[index]))

    @property
    def states(self) -> List[SemiclassicalState]:
        return [self.state_at(i) for i in range(len(self))]

    @property
    def final_state(self) -> SemiclassicalState:
        return self.state_at(-1)

    def truncated(self, t_end) -> "Trajectory":
        """the part of the trajectory up to t_end (e.g. the 3 ms the lasers are on in the experiment)"""
        stop = int(np.searchsorted(self.t, t_end, side="right"))
        return dataclasses.replace(
            self, t=self.t[:stop], alpha=self.alpha[:stop], beta=self.beta[:stop], w=self.w[:stop]
        )


@dataclass(frozen=True)
class IntegratorSettings:
    horizon: float = 20e-3
    dt_sample: float = 1e-6
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    epsilon: float = 1e-5

    def with_horizon(self, horizon) -> "IntegratorSettings":
        return dataclasses.replace(self, horizon=horizon)


def integrate(
    state0: SemiclassicalState,
    model: ModelParams,
    horizon=20e-3,
    dt_sample=1e-6,
    rel_tol=1e-8,
    abs_tol=1e-10,
) -> Trajectory:
    """
    integrate the mean-field equations from state0 and sample every dt_sample up to (at least) horizon

    raises StiffnessError on step size underflow and DivergenceError on a non-finite state.
    when the spin norm drifts by more than NORM_DRIFT_LIMIT the run is repeated with tighter tolerances;
    InvariantViolationError is raised once MIN_REL_TOL / MIN_ABS_TOL are reached and the drift persists.
    """
    if not horizon > 0 or not dt_sample > 0:
        raise errors.ParameterError("horizon and dt_sample must be positive")
    if not (0 < rel_tol <= MAX_TOLERANCE and 0 < abs_tol <= MAX_TOLERANCE):
        raise errors.ParameterError(f"tolerances must lie in (0, {MAX_TOLERANCE}]")

    field = vector_field(model)
    while True:
        run = stepper.march(field, state0.as_vector(), horizon, dt_sample, rel_tol, abs_tol)
        y = run.samples
        traj = Trajectory(
            t=run.t,
            alpha=y[:, 0] + 1j * y[:, 1],
            beta=y[:, 2] + 1j * y[:, 3],
            w=y[:, 4].copy(),
            model=model,
            rel_tol=rel_tol,
            abs_tol=abs_tol,
        )
        drift = traj.max_norm_drift
        if drift <= NORM_DRIFT_LIMIT:
            return traj
        if rel_tol <= MIN_REL_TOL and abs_tol <= MIN_ABS_TOL:
            raise errors.InvariantViolationError("spin norm drift", drift, NORM_DRIFT_LIMIT, traj.horizon)
        logger.verbose(
            f"spin norm drifted by {drift:.3g} at rtol={rel_tol:.1e} atol={abs_tol:.1e}, "
            f"repeating with tighter tolerances"
        )
        rel_tol = max(rel_tol / TOLERANCE_TIGHTENING, MIN_REL_TOL)
        abs_tol = max(abs_tol / TOLERANCE_TIGHTENING, MIN_ABS_TOL)


def integrate_with(settings: IntegratorSettings, state0: SemiclassicalState, model: ModelParams) -> Trajectory:
    return integrate(state0, model, settings.horizon, settings.dt_sample, settings.rel_tol, settings.abs_tol)


def cavity_output_rate(traj: Trajectory, n_atoms) -> np.ndarray:
    """photons per second leaving the cavity, 2 kappa <a^dagger a> with <a^dagger a> = 2N |alpha|^2"""
    if n_atoms < 1:
        raise errors.ParameterError(f"n_atoms must be >= 1, got {n_atoms!r}")
    return 2.0 * traj.model.kappa * 2.0 * n_atoms * traj.abs_alpha_sq
