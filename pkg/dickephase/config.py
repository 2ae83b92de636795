"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Run configuration files. Sections and keys:

    [model]       omega_khz, omega0_khz, lambda_plus_khz, lambda_minus_khz, kappa_khz
    [physical]    g_khz, delta_khz, kappa_khz, gamma_a_khz, omega_z_khz, n_atoms, rabi_plus_khz, rabi_minus_khz,
                  omega_c_offset_khz, omega_plus_khz, omega_minus_khz, measured_omega_d_khz
    [integrator]  horizon_ms, dt_sample_us, rel_tol, abs_tol, epsilon
    [classifier]  eps_triv, osc_std_min, sr_std_max, prominence_min, f_min_khz, window_fraction, w_band
    [sweep]       ratio_min, ratio_max, ratio_steps, lambda_min_khz, lambda_max_khz, lambda_steps, seed
    [quantum]     n_atoms, n_max, horizon_us, dt_sample_us, tol

All frequencies are linear kHz. Missing sections and keys take their defaults.
"""

import configparser
import dataclasses
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import errors
from . import logger
from .classifier import ClassifierThresholds
from .model import ModelParams, PhysicalParams, derive_model_params, to_angular
from .phasemap import SweepGrid
from .quantum import QuantumSettings
from .semiclassical import IntegratorSettings

KNOWN_KEYS = {
    "model": ["omega_khz", "omega0_khz", "lambda_plus_khz", "lambda_minus_khz", "kappa_khz"],
    "physical": [
        "g_khz",
        "delta_khz",
        "kappa_khz",
        "gamma_a_khz",
        "omega_z_khz",
        "n_atoms",
        "rabi_plus_khz",
        "rabi_minus_khz",
        "omega_c_offset_khz",
        "omega_plus_khz",
        "omega_minus_khz",
        "measured_omega_d_khz",
    ],
    "integrator": ["horizon_ms", "dt_sample_us", "rel_tol", "abs_tol", "epsilon"],
    "classifier": [
        "eps_triv",
        "osc_std_min",
        "sr_std_max",
        "prominence_min",
        "f_min_khz",
        "window_fraction",
        "w_band",
    ],
    "sweep": ["ratio_min", "ratio_max", "ratio_steps", "lambda_min_khz", "lambda_max_khz", "lambda_steps", "seed"],
    "quantum": ["n_atoms", "n_max", "horizon_us", "dt_sample_us", "tol"],
}

# the operating point of the balanced experiment: omega = 2pi x 100 kHz, omega0 = -2pi x 77 kHz
DEFAULT_MODEL = {"omega_khz": 100.0, "omega0_khz": -77.0, "lambda_plus_khz": 0.0, "lambda_minus_khz": 0.0}
DEFAULT_KAPPA_KHZ = 100.0


@dataclass(frozen=True)
class SweepSettings:
    ratio_min: float = 0.0
    ratio_max: float = 2.0
    ratio_steps: int = 81
    lambda_min_khz: float = 0.0
    lambda_max_khz: float = 150.0
    lambda_steps: int = 76
    seed: Optional[int] = None


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams
    physical: Optional[PhysicalParams] = None
    integrator: IntegratorSettings = IntegratorSettings()
    thresholds: ClassifierThresholds = ClassifierThresholds()
    sweep: SweepSettings = SweepSettings()
    quantum: QuantumSettings = QuantumSettings()

    def grid(self, seed: Optional[int] = None) -> SweepGrid:
        """the sweep grid, seed overrides the configured one"""
        s = self.sweep
        if s.ratio_steps < 1 or s.lambda_steps < 1:
            raise errors.ParameterError("sweep axes need at least one step")
        lambda_axis = np.linspace(to_angular(s.lambda_min_khz), to_angular(s.lambda_max_khz), s.lambda_steps)
        return SweepGrid(
            ratio_axis=np.linspace(s.ratio_min, s.ratio_max, s.ratio_steps),
            lambda_axis=lambda_axis,
            base=self.model,
            integrator=self.integrator,
            thresholds=self.thresholds,
            seed=s.seed if seed is None else seed,
        )


def default_config() -> RunConfig:
    return RunConfig(model=ModelParams.from_khz(kappa_khz=DEFAULT_KAPPA_KHZ, **DEFAULT_MODEL))


class _Section:
    """typed access to one section, remembering which keys were read"""

    def __init__(self, parser, name):
        self.name = name
        self.values = dict(parser[name]) if parser.has_section(name) else {}
        unknown = set(self.values) - set(KNOWN_KEYS[name])
        if unknown:
            raise errors.ParameterError(f"unknown key(s) in [{name}]: {', '.join(sorted(unknown))}")

    def __contains__(self, key):
        return key in self.values

    def float(self, key, default=None):
        if key not in self.values:
            return default
        try:
            return float(self.values[key])
        except ValueError:
            raise errors.ParameterError(f"[{self.name}] {key} = '{self.values[key]}' is not a number")

    def int(self, key, default=None):
        if key not in self.values:
            return default
        try:
            return int(self.values[key])
        except ValueError:
            raise errors.ParameterError(f"[{self.name}] {key} = '{self.values[key]}' is not an integer")

    def angular(self, key, default_khz=None):
        value = self.float(key, default_khz)
        return None if value is None else to_angular(value)


def _physical(section: _Section) -> Optional[PhysicalParams]:
    if not section.values:
        return None
    for key in ("g_khz", "delta_khz", "kappa_khz", "gamma_a_khz", "omega_z_khz", "n_atoms"):
        if key not in section:
            raise errors.ParameterError(f"[physical] needs {key}")
    return PhysicalParams(
        g=section.angular("g_khz"),
        delta=section.angular("delta_khz"),
        kappa=section.angular("kappa_khz"),
        gamma_a=section.angular("gamma_a_khz"),
        omega_z=section.angular("omega_z_khz"),
        n_atoms=section.int("n_atoms"),
        rabi_plus=section.angular("rabi_plus_khz", 0.0),
        rabi_minus=section.angular("rabi_minus_khz", 0.0),
        omega_c_offset=section.angular("omega_c_offset_khz", 0.0),
        omega_plus=section.angular("omega_plus_khz", 0.0),
        omega_minus=section.angular("omega_minus_khz", 0.0),
        measured_omega_d=section.angular("measured_omega_d_khz"),
    )


def _model(section: _Section, physical: Optional[PhysicalParams]) -> ModelParams:
    if not section.values and physical is not None:
        return derive_model_params(physical)
    kappa_default = DEFAULT_KAPPA_KHZ if physical is None else physical.kappa / to_angular(1.0)
    return ModelParams(
        omega=section.angular("omega_khz", DEFAULT_MODEL["omega_khz"]),
        omega0=section.angular("omega0_khz", DEFAULT_MODEL["omega0_khz"]),
        lambda_plus=section.angular("lambda_plus_khz", DEFAULT_MODEL["lambda_plus_khz"]),
        lambda_minus=section.angular("lambda_minus_khz", DEFAULT_MODEL["lambda_minus_khz"]),
        kappa=section.angular("kappa_khz", kappa_default),
    )


def _integrator(section: _Section) -> IntegratorSettings:
    d = IntegratorSettings()
    return IntegratorSettings(
        horizon=section.float("horizon_ms", d.horizon * 1e3) * 1e-3,
        dt_sample=section.float("dt_sample_us", d.dt_sample * 1e6) * 1e-6,
        rel_tol=section.float("rel_tol", d.rel_tol),
        abs_tol=section.float("abs_tol", d.abs_tol),
        epsilon=section.float("epsilon", d.epsilon),
    )


def _thresholds(section: _Section) -> ClassifierThresholds:
    d = ClassifierThresholds()
    return ClassifierThresholds(
        eps_triv=section.float("eps_triv", d.eps_triv),
        osc_std_min=section.float("osc_std_min", d.osc_std_min),
        sr_std_max=section.float("sr_std_max", d.sr_std_max),
        prominence_min=section.float("prominence_min", d.prominence_min),
        f_min=section.float("f_min_khz", d.f_min * 1e-3) * 1e3,
        window_fraction=section.float("window_fraction", d.window_fraction),
        w_band=section.float("w_band", d.w_band),
    )


def _sweep(section: _Section) -> SweepSettings:
    d = SweepSettings()
    return SweepSettings(
        ratio_min=section.float("ratio_min", d.ratio_min),
        ratio_max=section.float("ratio_max", d.ratio_max),
        ratio_steps=section.int("ratio_steps", d.ratio_steps),
        lambda_min_khz=section.float("lambda_min_khz", d.lambda_min_khz),
        lambda_max_khz=section.float("lambda_max_khz", d.lambda_max_khz),
        lambda_steps=section.int("lambda_steps", d.lambda_steps),
        seed=section.int("seed", d.seed),
    )


def _quantum(section: _Section) -> QuantumSettings:
    d = QuantumSettings()
    return QuantumSettings(
        n_atoms=section.int("n_atoms", d.n_atoms),
        n_max=section.int("n_max", d.n_max),
        horizon=section.float("horizon_us", d.horizon * 1e6) * 1e-6,
        dt_sample=section.float("dt_sample_us", d.dt_sample * 1e6) * 1e-6,
        tol=section.float("tol", d.tol),
    )


def load_config(file_path) -> RunConfig:
    """reads a .cfg file; without [model] the model is derived from [physical]"""
    logger.debug(f"reading config {file_path}")
    parser = configparser.ConfigParser()
    try:
        with open(file_path, "r", encoding="utf-8") as file:
            parser.read_file(file)
    except configparser.Error as e:
        raise errors.ParameterError(f"cannot read config {file_path}: {e}")
    unknown = set(parser.sections()) - set(KNOWN_KEYS)
    if unknown:
        raise errors.ParameterError(f"unknown section(s) in {file_path}: {', '.join(sorted(unknown))}")

    sections = {name: _Section(parser, name) for name in KNOWN_KEYS}
    physical = _physical(sections["physical"])
    return RunConfig(
        model=_model(sections["model"], physical),
        physical=physical,
        integrator=_integrator(sections["integrator"]),
        thresholds=_thresholds(sections["classifier"]),
        sweep=_sweep(sections["sweep"]),
        quantum=_quantum(sections["quantum"]),
    )


def load_or_default(file_path) -> RunConfig:
    if file_path is None:
        return default_config()
    return load_config(file_path)


def with_overrides(config: RunConfig, **model_khz) -> RunConfig:
    """replace model parameters given in kHz, None values are ignored"""
    changes = {key[:-4]: to_angular(value) for key, value in model_khz.items() if value is not None}
    if not changes:
        return config
    return dataclasses.replace(config, model=dataclasses.replace(config.model, **changes))
