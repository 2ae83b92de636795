"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Small-N master equation for the cavity mode coupled to the collective spin of N spin-1 atoms.

N atoms prepared in |+1> form the maximal multiplet J = N of the collective spin, and neither the
Hamiltonian (built from collective operators) nor photon loss leaves it. The spin is therefore a single
(2N+1)-level ladder. Basis ordering is spin major: index = (N - m) (n_max + 1) + n for m = N..-N and
Fock states n = 0..n_max, which is qutip's ordering for tensor(spin, cavity) with jmat(N).

Operators, the Liouvillian and the time evolution come from qutip. Density matrices handed to and
returned from this module are plain numpy arrays.
"""

import dataclasses
import functools
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np
import qutip
from qutip.solver.integrator import IntegratorException
from scipy import linalg

from . import errors
from . import logger
from . import semiclassical
from .model import ModelParams

MAX_ATOMS = 8
MIN_FOCK_CUTOFF = 4
MAX_DIMENSION = 2048
TOP_FOCK_LIMIT = 1e-4
HERMITICITY_LIMIT = 1e-10
TRACE_LIMIT = 1e-8
POSITIVITY_LIMIT = 1e-8
# checked at every sample of a run
RUN_HERMITICITY_LIMIT = 1e-8
RUN_TRACE_LIMIT = 1e-8
TRUNCATION_CHANGE_LIMIT = 1e-4
MAX_SOLVER_STEPS = 1_000_000


@dataclass(frozen=True)
class HilbertSpec:
    n_atoms: int
    n_max: int

    def __post_init__(self):
        if not 1 <= self.n_atoms <= MAX_ATOMS:
            raise errors.HilbertSpaceError(f"n_atoms must lie in [1, {MAX_ATOMS}], got {self.n_atoms}")
        if self.n_max < MIN_FOCK_CUTOFF:
            raise errors.HilbertSpaceError(f"n_max must be at least {MIN_FOCK_CUTOFF}, got {self.n_max}")
        if self.dimension > MAX_DIMENSION:
            raise errors.HilbertSpaceError(f"dimension {self.dimension} exceeds {MAX_DIMENSION}")

    @property
    def spin_dimension(self) -> int:
        return 2 * self.n_atoms + 1

    @property
    def fock_dimension(self) -> int:
        return self.n_max + 1

    @property
    def dimension(self) -> int:
        return self.spin_dimension * self.fock_dimension

    @property
    def dims(self) -> list:
        """qutip dims of an operator on spin x cavity"""
        return [[self.spin_dimension, self.fock_dimension], [self.spin_dimension, self.fock_dimension]]

    def index(self, m, n) -> int:
        if not (-self.n_atoms <= m <= self.n_atoms and 0 <= n <= self.n_max):
            raise errors.HilbertSpaceError(f"no basis state m={m}, n={n}")
        return (self.n_atoms - m) * self.fock_dimension + n

    def with_n_max(self, n_max) -> "HilbertSpec":
        return dataclasses.replace(self, n_max=n_max)


class Operators(NamedTuple):
    a: object
    n: object
    jz: object
    jp: object
    jm: object
    j_sq: object
    top_fock: object


def _check_spin(j):
    two_j = 2 * j
    if two_j < 0 or abs(two_j - round(two_j)) > 1e-12:
        raise errors.ParameterError(f"spin must be a non-negative integer or half-integer, got {j!r}")
    return round(two_j) / 2


def spin_matrices(j):
    """(Jz, J+, J-) for spin j in the basis m = j..-j"""
    j = _check_spin(j)
    return tuple(qutip.jmat(j, which).full().real for which in ("z", "+", "-"))


@functools.lru_cache(maxsize=16)
def qobj_operators(spec: HilbertSpec) -> Operators:
    """collective spin and cavity operators on spin x cavity as qutip objects"""
    spin_id = qutip.qeye(spec.spin_dimension)
    fock_id = qutip.qeye(spec.fock_dimension)
    a = qutip.destroy(spec.fock_dimension)
    jz, jp, jm = (qutip.jmat(spec.n_atoms, which) for which in ("z", "+", "-"))
    return Operators(
        a=qutip.tensor(spin_id, a),
        n=qutip.tensor(spin_id, a.dag() * a),
        jz=qutip.tensor(jz, fock_id),
        jp=qutip.tensor(jp, fock_id),
        jm=qutip.tensor(jm, fock_id),
        j_sq=qutip.tensor(jz * jz + 0.5 * (jp * jm + jm * jp), fock_id),
        top_fock=qutip.tensor(spin_id, qutip.fock_dm(spec.fock_dimension, spec.n_max)),
    )


@functools.lru_cache(maxsize=16)
def operators(spec: HilbertSpec) -> Operators:
    """the operators of qobj_operators as read-only dense arrays"""
    arrays = [op.full() for op in qobj_operators(spec)]
    for op in arrays:
        op.setflags(write=False)
    return Operators(*arrays)


def hamiltonian(model: ModelParams, spec: HilbertSpec) -> qutip.Qobj:
    """
    H = omega a^dagger a + omega0 Jz
        + lambda_- / sqrt(2N) (a J+ + a^dagger J-)
        + lambda_+ / sqrt(2N) (a J- + a^dagger J+)
    """
    ops = qobj_operators(spec)
    adag = ops.a.dag()
    scale = 1.0 / math.sqrt(2.0 * spec.n_atoms)
    h = model.omega * ops.n + model.omega0 * ops.jz
    h = h + (model.lambda_minus * scale) * (ops.a * ops.jp + adag * ops.jm)
    h = h + (model.lambda_plus * scale) * (ops.a * ops.jm + adag * ops.jp)
    return h


def build_hamiltonian(model: ModelParams, spec: HilbertSpec) -> np.ndarray:
    return hamiltonian(model, spec).full()


def liouvillian(h, kappa, spec: HilbertSpec) -> qutip.Qobj:
    """generator of d rho/dt = -i [H, rho] + kappa (2 a rho a^dagger - a^dagger a rho - rho a^dagger a)"""
    if not isinstance(h, qutip.Qobj):
        h = qutip.Qobj(np.asarray(h), dims=spec.dims)
    return qutip.liouvillian(h, [math.sqrt(2.0 * kappa) * qobj_operators(spec).a])


@dataclass(frozen=True, eq=False)
class DensityState:
    rho: np.ndarray
    spec: HilbertSpec

    def __post_init__(self):
        shape = (self.spec.dimension, self.spec.dimension)
        if self.rho.shape != shape:
            raise errors.HilbertSpaceError(f"density matrix has shape {self.rho.shape}, expected {shape}")

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))

    def trace_error(self) -> float:
        return float(abs(np.trace(self.rho) - 1.0))

    def min_eigenvalue(self) -> float:
        return float(linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T))[0])

    def check(self):
        """raise if rho is not Hermitian, normalized and (approximately) positive"""
        if self.hermiticity_error() > HERMITICITY_LIMIT:
            raise errors.ParameterError(f"density matrix is not Hermitian ({self.hermiticity_error():.3g})")
        if self.trace_error() > TRACE_LIMIT:
            raise errors.ParameterError(f"density matrix trace is off by {self.trace_error():.3g}")
        if self.min_eigenvalue() < -POSITIVITY_LIMIT:
            raise errors.ParameterError(f"density matrix has eigenvalue {self.min_eigenvalue():.3g}")

    def expectation(self, op) -> complex:
        return complex(np.sum(op * self.rho.T))

    def as_qobj(self) -> qutip.Qobj:
        return qutip.Qobj(self.rho, dims=self.spec.dims)


def initial_density(spec: HilbertSpec, m: Optional[int] = None, n=0) -> DensityState:
    """|J=N, m> (m = N unless given) times the Fock state |n>"""
    m = spec.n_atoms if m is None else m
    spec.index(m, n)
    ket = qutip.tensor(qutip.basis(spec.spin_dimension, spec.n_atoms - m), qutip.basis(spec.fock_dimension, n))
    return DensityState(qutip.ket2dm(ket).full(), spec)


def density_from_amplitudes(spec: HilbertSpec, triples) -> DensityState:
    """pure state from (index, re, im) amplitude triples, normalized"""
    psi = np.zeros(spec.dimension, dtype=complex)
    for triple in triples:
        if len(triple) != 3:
            raise errors.ParameterError(f"expected (index, re, im), got {triple!r}")
        index, re, im = triple
        if int(index) != index or not 0 <= index < spec.dimension:
            raise errors.HilbertSpaceError(f"amplitude index {index!r} outside [0, {spec.dimension})")
        psi[int(index)] += complex(float(re), float(im))
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise errors.ParameterError("initial state has no nonzero amplitude")
    ket = qutip.Qobj((psi / norm).reshape(-1, 1))
    return DensityState(qutip.ket2dm(ket).full(), spec)


def lindblad_rhs(rho: DensityState, h, kappa) -> np.ndarray:
    """
    d rho/dt = -i [H, rho] + kappa (2 a rho a^dagger - a^dagger a rho - rho a^dagger a)

    valid for any square rho, Hermitian or not
    """
    generator = liouvillian(h, kappa, rho.spec)
    d_rho = qutip.vector_to_operator(generator @ qutip.operator_to_vector(rho.as_qobj()))
    return d_rho.full()


@dataclass(frozen=True, eq=False)
class ExpectationSeries:
    """
    expectations along a master equation run

    t -- sample times in s
    exp_a, exp_jm -- complex <a>, <J->
    exp_jz, exp_n -- real <Jz>, <a^dagger a>
    trace_error, hermiticity_error, min_eigenvalue, j_sq -- invariant monitors per sample
    """

    t: np.ndarray
    exp_a: np.ndarray
    exp_jm: np.ndarray
    exp_jz: np.ndarray
    exp_n: np.ndarray
    n_atoms: int
    trace_error: np.ndarray
    hermiticity_error: np.ndarray
    min_eigenvalue: np.ndarray
    j_sq: np.ndarray

    @property
    def alpha(self) -> np.ndarray:
        return self.exp_a / math.sqrt(2.0 * self.n_atoms)

    @property
    def beta(self) -> np.ndarray:
        return self.exp_jm / (2.0 * self.n_atoms)

    @property
    def w(self) -> np.ndarray:
        return self.exp_jz / (2.0 * self.n_atoms)

    @property
    def scaled_photons(self) -> np.ndarray:
        """<a^dagger a> / (2N), the counterpart of |alpha|^2"""
        return self.exp_n / (2.0 * self.n_atoms)


@dataclass(frozen=True)
class QuantumSettings:
    n_atoms: int = 1
    n_max: int = 24
    horizon: float = 100e-6
    dt_sample: float = 0.5e-6
    tol: float = 1e-8


class _RunMonitor:
    """
    e_ops callable of mesolve: records the invariant monitors of every sample and stops the run
    when one of them leaves its range
    """

    def __init__(self, spec: HilbertSpec, monitor_positivity):
        self.spec = spec
        self.monitor_positivity = monitor_positivity
        self.top_fock = operators(spec).top_fock
        self.last_time = 0.0
        self.rows = []

    def __call__(self, t, state):
        self.last_time = t
        rho = state.full()
        if not np.all(np.isfinite(rho)):
            raise errors.DivergenceError(t)
        top = float(np.sum(self.top_fock * rho.T).real)
        if top > TOP_FOCK_LIMIT:
            raise errors.TruncationOverflowError(t, top)
        density = DensityState(rho, self.spec)
        trace_error = density.trace_error()
        if trace_error > RUN_TRACE_LIMIT:
            raise errors.InvariantViolationError("trace error", trace_error, RUN_TRACE_LIMIT, t)
        hermiticity_error = density.hermiticity_error()
        if hermiticity_error > RUN_HERMITICITY_LIMIT:
            raise errors.InvariantViolationError("hermiticity error", hermiticity_error, RUN_HERMITICITY_LIMIT, t)
        min_eig = density.min_eigenvalue() if self.monitor_positivity else 0.0
        if min_eig < -POSITIVITY_LIMIT:
            raise errors.InvariantViolationError("negative eigenvalue", -min_eig, POSITIVITY_LIMIT, t)
        self.rows.append((trace_error, hermiticity_error, min_eig))
        return trace_error


def evolve_density(
    rho0: DensityState,
    model: ModelParams,
    spec: HilbertSpec,
    horizon=100e-6,
    dt_sample=0.5e-6,
    tol=1e-8,
    monitor_positivity=True,
) -> ExpectationSeries:
    """
    integrate the master equation from rho0 with qutip's mesolve and sample expectations every dt_sample

    raises TruncationOverflowError at the first sample where the top Fock level holds more than 1e-4 of the
    population, InvariantViolationError when trace, Hermiticity or positivity of rho break down,
    DivergenceError on non-finite entries and StiffnessError when the integrator gives up
    """
    if rho0.spec != spec:
        raise errors.HilbertSpaceError("initial state belongs to another Hilbert space")
    rho0.check()
    if not horizon > 0 or not dt_sample > 0:
        raise errors.ParameterError("horizon and dt_sample must be positive")

    ops = qobj_operators(spec)
    n_intervals = max(1, int(math.ceil(horizon / dt_sample - 1e-9)))
    t_list = np.arange(n_intervals + 1) * dt_sample
    monitor = _RunMonitor(spec, monitor_positivity)
    options = {
        "method": "dop853",
        "rtol": tol,
        "atol": tol * 1e-3,
        "nsteps": MAX_SOLVER_STEPS,
        "store_states": False,
        "normalize_output": False,
    }

    logger.verbose(f"master equation: N={spec.n_atoms}, n_max={spec.n_max}, dimension {spec.dimension}")
    generator = liouvillian(hamiltonian(model, spec), model.kappa, spec)
    try:
        result = qutip.mesolve(
            generator,
            rho0.as_qobj(),
            t_list,
            e_ops=[ops.a, ops.jm, ops.jz, ops.n, ops.j_sq, monitor],
            options=options,
        )
    except IntegratorException as e:
        logger.debug(f"mesolve failed after t = {monitor.last_time:.6g} s: {e}")
        raise errors.StiffnessError(monitor.last_time)

    expect = [np.asarray(values) for values in result.expect]
    monitors = np.asarray(monitor.rows, dtype=float)
    return ExpectationSeries(
        t=t_list,
        exp_a=expect[0].astype(complex),
        exp_jm=expect[1].astype(complex),
        exp_jz=np.real(expect[2]),
        exp_n=np.real(expect[3]),
        n_atoms=spec.n_atoms,
        trace_error=monitors[:, 0],
        hermiticity_error=monitors[:, 1],
        min_eigenvalue=monitors[:, 2],
        j_sq=np.real(expect[4]),
    )


@dataclass(frozen=True)
class TruncationCheck:
    converged: bool
    max_relative_change: float


def _relative_change(reference, other) -> float:
    scale = float(np.max(np.abs(reference)))
    change = float(np.max(np.abs(reference - other)))
    return change / scale if scale > 1e-12 else change


def truncation_converged(
    model: ModelParams, spec: HilbertSpec, horizon=100e-6, dt_sample=0.5e-6, tol=1e-8
) -> TruncationCheck:
    """compare a run from the default initial state against the same run with four more Fock states"""
    wider = spec.with_n_max(spec.n_max + 4)
    base = evolve_density(initial_density(spec), model, spec, horizon, dt_sample, tol, monitor_positivity=False)
    ref = evolve_density(initial_density(wider), model, wider, horizon, dt_sample, tol, monitor_positivity=False)
    change = max(
        _relative_change(ref.exp_a, base.exp_a),
        _relative_change(ref.exp_jm, base.exp_jm),
        _relative_change(ref.exp_jz, base.exp_jz),
        _relative_change(ref.exp_n, base.exp_n),
    )
    if change >= TRUNCATION_CHANGE_LIMIT:
        logger.warning(f"n_max={spec.n_max} is not converged: expectations change by {change:.3g} at n_max+4")
    return TruncationCheck(change < TRUNCATION_CHANGE_LIMIT, change)


@dataclass(frozen=True)
class MeanFieldGap:
    n_atoms: int
    quantum_plateau: float
    semiclassical_plateau: float
    gap: float


@dataclass(frozen=True)
class CompareReport:
    gaps: List[MeanFieldGap]

    @property
    def monotone(self) -> bool:
        """gap never grows from one N to the next (in the order the atom numbers were given)"""
        values = [g.gap for g in self.gaps]
        return all(b <= a for a, b in zip(values, values[1:]))

    @property
    def shrinks(self) -> bool:
        """gap at the largest N is strictly below the gap at the smallest N"""
        if len(self.gaps) < 2:
            return False
        ordered = sorted(self.gaps, key=lambda g: g.n_atoms)
        return ordered[-1].gap < ordered[0].gap


def _plateau(values, fraction):
    n = max(1, int(len(values) * fraction))
    return float(np.mean(values[-n:]))


def compare_mean_field(
    model: ModelParams,
    n_values: Sequence[int],
    n_max=24,
    horizon=100e-6,
    dt_sample=0.5e-6,
    tol=1e-8,
    plateau_fraction=0.25,
    mean_field_horizon=1e-3,
) -> CompareReport:
    """
    relative gap between the quantum photon plateau <a^dagger a>/(2N) and the mean-field |alpha|^2 plateau

    both start from the fully polarized spin and an empty cavity. The mean-field run needs the usual small
    perturbation to leave the fixed point and grows out of it much more slowly than the quantum runs, which are
    seeded by vacuum fluctuations, so it is integrated over the longer mean_field_horizon.
    """
    if mean_field_horizon < horizon:
        raise errors.ParameterError("mean_field_horizon must not be shorter than the quantum horizon")
    traj = semiclassical.integrate(semiclassical.perturbed_initial(), model, mean_field_horizon, dt_sample)
    mean_field = _plateau(traj.abs_alpha_sq, plateau_fraction)
    if mean_field <= 0:
        raise errors.ParameterError("mean-field plateau is zero, choose a coupling above threshold")
    gaps = []
    for n_atoms in n_values:
        spec = HilbertSpec(n_atoms, n_max)
        series = evolve_density(initial_density(spec), model, spec, horizon, dt_sample, tol, monitor_positivity=False)
        plateau = _plateau(series.scaled_photons, plateau_fraction)
        gap = abs(plateau - mean_field) / mean_field
        logger.verbose(f"N={n_atoms}: quantum {plateau:.6g}, mean field {mean_field:.6g}, gap {gap:.3g}")
        gaps.append(MeanFieldGap(n_atoms, plateau, mean_field, gap))
    return CompareReport(gaps)
