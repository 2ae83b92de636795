"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Parameter types of the imbalanced-driving spin-1 Dicke model and the calibration formulas that map laboratory
quantities onto them.

Frequency convention: everything crossing a file or command line boundary is a linear frequency in kHz,
everything inside this package is an angular frequency in rad/s. `to_angular` and `to_linear_khz` are the
only places where the factor 2*pi*1000 appears.
"""

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from . import errors

KHZ_TO_RAD_PER_S = 2.0 * math.pi * 1000.0

# |delta_pm| has to stay well below 2 omega_z for the omitted Raman terms to be off resonant
RAMAN_VALIDITY_THRESHOLD = 0.1


def _require_finite(name, value):
    if not math.isfinite(value):
        raise errors.ParameterError(f"{name} must be finite, got {value!r}")


def to_angular(nu_khz: float) -> float:
    """linear frequency in kHz -> angular frequency in rad/s"""
    _require_finite("frequency", nu_khz)
    return nu_khz * KHZ_TO_RAD_PER_S


def to_linear_khz(omega: float) -> float:
    """angular frequency in rad/s -> linear frequency in kHz"""
    _require_finite("frequency", omega)
    return omega / KHZ_TO_RAD_PER_S


@dataclass(frozen=True)
class ModelParams:
    """
    the rotating-frame model numbers, all in rad/s

    omega -- effective cavity detuning
    omega0 -- effective Zeeman splitting, may be negative (sign is kept as calibrated)
    lambda_plus -- counter-rotating coupling magnitude
    lambda_minus -- co-rotating coupling magnitude
    kappa -- cavity field decay rate
    """

    omega: float
    omega0: float
    lambda_plus: float
    lambda_minus: float
    kappa: float

    def __post_init__(self):
        for field in dataclasses.fields(self):
            _require_finite(field.name, getattr(self, field.name))
        if self.kappa <= 0:
            raise errors.ParameterError(f"kappa must be positive, got {self.kappa!r}")
        if self.lambda_plus < 0 or self.lambda_minus < 0:
            raise errors.ParameterError("lambda_plus and lambda_minus are magnitudes and must not be negative")

    @classmethod
    def from_khz(cls, omega_khz, omega0_khz, lambda_plus_khz, lambda_minus_khz, kappa_khz):
        return cls(
            omega=to_angular(omega_khz),
            omega0=to_angular(omega0_khz),
            lambda_plus=to_angular(lambda_plus_khz),
            lambda_minus=to_angular(lambda_minus_khz),
            kappa=to_angular(kappa_khz),
        )

    def as_khz(self) -> dict:
        return {
            "omega_khz": to_linear_khz(self.omega),
            "omega0_khz": to_linear_khz(self.omega0),
            "lambda_plus_khz": to_linear_khz(self.lambda_plus),
            "lambda_minus_khz": to_linear_khz(self.lambda_minus),
            "kappa_khz": to_linear_khz(self.kappa),
        }

    @property
    def lambda_max(self) -> float:
        return max(self.lambda_plus, self.lambda_minus)

    @property
    def coupling_ratio(self) -> Optional[float]:
        """lambda_plus / lambda_minus, None when the co-rotating coupling is off"""
        if self.lambda_minus == 0:
            return None
        return self.lambda_plus / self.lambda_minus

    def with_couplings(self, lambda_plus, lambda_minus) -> "ModelParams":
        return dataclasses.replace(self, lambda_plus=lambda_plus, lambda_minus=lambda_minus)

    def with_ratio(self, ratio, lambda_max) -> "ModelParams":
        return self.with_couplings(*couplings_for_ratio(ratio, lambda_max))

    def scaled(self, factor) -> "ModelParams":
        """all rates multiplied by factor (time rescaling)"""
        if factor <= 0:
            raise errors.ParameterError(f"scale factor must be positive, got {factor!r}")
        return ModelParams(
            self.omega * factor,
            self.omega0 * factor,
            self.lambda_plus * factor,
            self.lambda_minus * factor,
            self.kappa * factor,
        )

    def log_string(self):
        khz = self.as_khz()
        return ", ".join(f"{key[:-4]}=2pi*{value:.6g} kHz" for key, value in khz.items())


def couplings_for_ratio(ratio: float, lambda_max: float) -> Tuple[float, float]:
    """
    (lambda_plus, lambda_minus) for a point of the phase diagram

    ratio <= 1 keeps lambda_minus at lambda_max, ratio > 1 keeps lambda_plus at lambda_max.
    """
    _require_finite("ratio", ratio)
    _require_finite("lambda_max", lambda_max)
    if ratio < 0:
        raise errors.ParameterError(f"coupling ratio must not be negative, got {ratio!r}")
    if lambda_max < 0:
        raise errors.ParameterError(f"lambda_max must not be negative, got {lambda_max!r}")
    if ratio <= 1.0:
        return ratio * lambda_max, lambda_max
    return lambda_max, lambda_max / ratio


@dataclass(frozen=True)
class PhysicalParams:
    """
    laboratory quantities, all frequencies in rad/s

    g -- single atom coupling
    delta -- detuning from the excited manifold, sign carrying
    kappa -- cavity half linewidth
    gamma_a -- atomic dipole decay rate
    omega_z -- Zeeman splitting
    n_atoms -- atom number
    rabi_plus, rabi_minus -- Rabi couplings of the two Raman lasers
    omega_c_offset, omega_plus, omega_minus -- cavity and laser frequencies against a common reference
    measured_omega_d -- measured dispersive shift, replaces the formula value when set
    """

    g: float
    delta: float
    kappa: float
    gamma_a: float
    omega_z: float
    n_atoms: int
    rabi_plus: float = 0.0
    rabi_minus: float = 0.0
    omega_c_offset: float = 0.0
    omega_plus: float = 0.0
    omega_minus: float = 0.0
    measured_omega_d: Optional[float] = None

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if value is not None:
                _require_finite(field.name, value)
        if self.delta == 0:
            raise errors.SingularInputError("delta")
        for name in ("g", "kappa", "gamma_a", "omega_z"):
            if getattr(self, name) <= 0:
                raise errors.ParameterError(f"{name} must be positive, got {getattr(self, name)!r}")
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise errors.ParameterError(f"n_atoms must be an integer >= 1, got {self.n_atoms!r}")


@dataclass(frozen=True)
class RamanDetunings:
    delta_plus: float
    delta_minus: float
    valid: bool
    # max(|delta_pm|) / (2 omega_z)
    validity_ratio: float


def dispersive_shift_for(n_atoms, g, delta) -> float:
    """(2/3) N g^2 / Delta"""
    if delta == 0:
        raise errors.SingularInputError("delta")
    return 2.0 / 3.0 * n_atoms * g * g / delta


def dispersive_shift(phys: PhysicalParams) -> float:
    """dispersive cavity shift from the formula, ignores any measured value"""
    return dispersive_shift_for(phys.n_atoms, phys.g, phys.delta)


def effective_dispersive_shift(phys: PhysicalParams) -> float:
    if phys.measured_omega_d is not None:
        return phys.measured_omega_d
    return dispersive_shift(phys)


def atom_number_from_shift(omega_d, g, delta) -> float:
    """inverse of dispersive_shift_for, the atom number that produces a given shift"""
    if g == 0:
        raise errors.SingularInputError("g")
    if delta == 0:
        raise errors.SingularInputError("delta")
    return 1.5 * omega_d * delta / (g * g)


def _coupling_prefactor(phys: PhysicalParams) -> float:
    return math.sqrt(2.0 * phys.n_atoms) * phys.g / (24.0 * abs(phys.delta))


def coupling_for_rabi(rabi, phys: PhysicalParams) -> float:
    """|lambda| for one laser, sqrt(2N) g |Omega| / (24 |Delta|)"""
    return _coupling_prefactor(phys) * abs(rabi)


def rabi_for_coupling(lambda_, phys: PhysicalParams) -> float:
    """the Rabi coupling a laser needs to produce the coupling magnitude lambda_"""
    if lambda_ < 0:
        raise errors.ParameterError(f"coupling must not be negative, got {lambda_!r}")
    return lambda_ / _coupling_prefactor(phys)


def derive_model_params(phys: PhysicalParams) -> ModelParams:
    """
    map laboratory quantities onto the model

    omega = omega_c - (omega_+ + omega_-)/2 + omega_d
    omega0 = -(omega_z + (omega_+ - omega_-)/2)
    lambda_pm = -sqrt(2N) g Omega_pm / (24 Delta), stored as magnitudes
    """
    omega_d = effective_dispersive_shift(phys)
    omega = phys.omega_c_offset - 0.5 * (phys.omega_plus + phys.omega_minus) + omega_d
    omega0 = -(phys.omega_z + 0.5 * (phys.omega_plus - phys.omega_minus))
    return ModelParams(
        omega=omega,
        omega0=omega0,
        lambda_plus=coupling_for_rabi(phys.rabi_plus, phys),
        lambda_minus=coupling_for_rabi(phys.rabi_minus, phys),
        kappa=phys.kappa,
    )


def scale_coupling(lambda_ref, power_ratio=1.0, atom_ratio=1.0) -> float:
    """
    rescale a calibrated coupling to another laser power and atom number

    lambda grows with the Rabi coupling (sqrt of the laser power) and with sqrt(N)
    """
    if power_ratio < 0 or atom_ratio < 0:
        raise errors.ParameterError("power and atom number ratios must not be negative")
    return lambda_ref * math.sqrt(power_ratio) * math.sqrt(atom_ratio)


def raman_detunings(model: ModelParams, omega_z: float) -> RamanDetunings:
    """
    dispersively corrected detunings delta_pm = -(omega +- omega0) of the two lasers

    valid is False when either detuning comes within a tenth of 2 omega_z, where the neglected Raman
    resonances start to matter.
    """
    _require_finite("omega_z", omega_z)
    if omega_z <= 0:
        raise errors.SingularInputError("omega_z")
    delta_plus = -(model.omega + model.omega0)
    delta_minus = -(model.omega - model.omega0)
    ratio = max(abs(delta_plus), abs(delta_minus)) / (2.0 * omega_z)
    return RamanDetunings(delta_plus, delta_minus, ratio < RAMAN_VALIDITY_THRESHOLD, ratio)


def cooperativity(g, kappa, gamma_a) -> float:
    """single atom cooperativity g^2 / (kappa gamma_a)"""
    if kappa == 0:
        raise errors.SingularInputError("kappa")
    if gamma_a == 0:
        raise errors.SingularInputError("gamma_a")
    if kappa < 0 or gamma_a < 0:
        raise errors.ParameterError("kappa and gamma_a must be positive")
    return g * g / (kappa * gamma_a)


def spontaneous_emission_rate(lambda_, n_atoms, cooperativity_, kappa) -> float:
    """spontaneous emission rate 96 lambda^2 / (N C kappa) caused by one Raman laser, in 1/s"""
    if lambda_ < 0:
        raise errors.ParameterError(f"coupling must not be negative, got {lambda_!r}")
    for name, value in (("n_atoms", n_atoms), ("cooperativity", cooperativity_), ("kappa", kappa)):
        if value == 0:
            raise errors.SingularInputError(name)
        if value < 0:
            raise errors.ParameterError(f"{name} must be positive, got {value!r}")
    return 96.0 * lambda_ * lambda_ / (n_atoms * cooperativity_ * kappa)
