"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

Phase classification of mean-field trajectories from the cavity output proxy |alpha(t)|^2.

The decision only looks at the trailing part of a trajectory: a trajectory that oscillates early and then
settles counts as superradiant. Classifying a shortened trajectory (`Trajectory.truncated`) gives the
designation an experiment with a finite pulse would see.
"""

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum, unique
from typing import Optional

import numpy as np
from scipy import signal

from . import errors
from . import logger
from .semiclassical import Trajectory

MIN_STATS_SAMPLES = 64
MIN_SPECTRUM_SAMPLES = 256
# welch segments per analysis window (50 % overlap)
SEGMENTS_PER_WINDOW = 4
SAMPLING_TOLERANCE = 1e-6


@unique
class PhaseLabel(Enum):
    NORMAL = "Normal"
    INVERTED = "Inverted"
    SUPERRADIANT = "Superradiant"
    OSCILLATORY = "Oscillatory"
    UNRESOLVED = "Unresolved"

    @classmethod
    def from_string(cls, text) -> "PhaseLabel":
        try:
            return cls(text)
        except ValueError:
            raise errors.ParameterError(f"Unknown phase label '{text}'")


@dataclass(frozen=True)
class PhasePoint:
    label: PhaseLabel
    mean_photon_proxy: float
    rel_std: float
    w_final: float
    peak_freq: Optional[float] = None
    peak_prominence: Optional[float] = None

    def __post_init__(self):
        if self.mean_photon_proxy < 0 or self.rel_std < 0:
            raise errors.ParameterError("mean_photon_proxy and rel_std must not be negative")
        has_peak = self.peak_freq is not None and self.peak_prominence is not None
        if has_peak != (self.label is PhaseLabel.OSCILLATORY):
            raise errors.ParameterError("peak fields are present exactly for oscillatory points")


@dataclass(frozen=True, eq=False)
class Spectrum:
    """power spectrum of |alpha|^2, freqs in Hz from 0 to Nyquist, window_length in s"""

    freqs: np.ndarray
    power: np.ndarray
    window_length: float

    def __post_init__(self):
        if len(self.freqs) != len(self.power):
            raise errors.ParameterError("spectrum arrays must have equal length")
        if len(self.freqs) < 2 or self.freqs[0] != 0 or np.any(np.diff(self.freqs) <= 0):
            raise errors.ParameterError("spectrum frequencies must increase strictly from 0")


@dataclass(frozen=True)
class Peak:
    freq: float
    power: float
    prominence: float


@dataclass(frozen=True)
class WindowStats:
    mean: float
    rel_std: float
    mean_w: float


@dataclass(frozen=True)
class PulseStats:
    peak_time: float
    peak_value: float
    fwhm: float


@dataclass(frozen=True)
class ClassifierThresholds:
    eps_triv: float = 1e-6
    osc_std_min: float = 0.02
    sr_std_max: float = 0.02
    prominence_min: float = 10.0
    f_min: float = 1e3
    window_fraction: float = 0.25
    w_band: float = 0.4

    def __post_init__(self):
        if not 0 < self.window_fraction <= 0.5:
            raise errors.ParameterError(f"window_fraction must lie in (0, 0.5], got {self.window_fraction!r}")
        if not 0 < self.w_band < 0.5:
            raise errors.ParameterError(f"w_band must lie in (0, 0.5), got {self.w_band!r}")
        for field in dataclasses.fields(self):
            if getattr(self, field.name) < 0:
                raise errors.ParameterError(f"{field.name} must not be negative")


def _trailing_window(traj: Trajectory, window_fraction, required):
    if not 0 < window_fraction <= 0.5:
        raise errors.ParameterError(f"window_fraction must lie in (0, 0.5], got {window_fraction!r}")
    n_window = int(math.floor(window_fraction * len(traj)))
    if n_window < required:
        raise errors.TrajectoryTooShortError(n_window, required)
    return slice(len(traj) - n_window, len(traj))


def steady_window_stats(traj: Trajectory, window_fraction=0.25) -> WindowStats:
    """mean and relative standard deviation of |alpha|^2, and mean w, over the trailing window"""
    window = _trailing_window(traj, window_fraction, MIN_STATS_SAMPLES)
    proxy = traj.abs_alpha_sq[window]
    mean = float(np.mean(proxy))
    rel_std = float(np.std(proxy) / mean) if mean > 0 else 0.0
    return WindowStats(mean, rel_std, float(np.mean(traj.w[window])))


def oscillation_spectrum(traj: Trajectory, window_fraction=0.25) -> Spectrum:
    """
    power spectrum of |alpha|^2 over the trailing window

    Welch average of mean-detrended, Hann-windowed periodograms over SEGMENTS_PER_WINDOW segments with 50 %
    overlap. The averaging keeps the noise floor flat enough that a prominence test against its median does not
    fire on broadband noise.
    """
    window = _trailing_window(traj, window_fraction, MIN_SPECTRUM_SAMPLES)
    t = traj.t[window]
    steps = np.diff(t)
    dt = float(np.mean(steps))
    deviation = float(np.max(np.abs(steps - dt)) / dt)
    if deviation > SAMPLING_TOLERANCE:
        raise errors.NonUniformSamplingError(deviation)

    proxy = traj.abs_alpha_sq[window]
    nperseg = len(proxy) // SEGMENTS_PER_WINDOW
    freqs, power = signal.welch(
        proxy,
        fs=1.0 / dt,
        window="hann",
        nperseg=nperseg,
        noverlap=nperseg // 2,
        detrend="constant",
        scaling="spectrum",
    )
    power[0] = 0.0
    return Spectrum(freqs=freqs, power=power, window_length=nperseg * dt)


def dominant_peak(spec: Spectrum, f_min=1e3, prominence_min=10.0) -> Optional[Peak]:
    """
    the strongest bin at or above f_min, if it stands out prominence_min times over the median power above f_min

    the strongest bin counts even at the edge of the band, e.g. an oscillation slightly above f_min whose power
    falls off monotonically towards higher frequencies
    """
    if f_min < 2.0 / spec.window_length * (1 - 1e-12):
        raise errors.ParameterError(
            f"f_min {f_min:.6g} Hz is below two frequency bins ({2.0 / spec.window_length:.6g} Hz)"
        )
    band = spec.freqs >= f_min
    power = spec.power[band]
    if len(power) < 3 or not np.any(power > 0):
        return None

    best = int(np.argmax(power))
    median = float(np.median(power))
    prominence = float(power[best] / median) if median > 0 else math.inf
    if prominence < prominence_min:
        return None
    return Peak(float(spec.freqs[band][best]), float(power[best]), prominence)


def classify(traj: Trajectory, thresholds: ClassifierThresholds = ClassifierThresholds()) -> PhasePoint:
    """
    assign a phase label

    1. no light (mean |alpha|^2 < eps_triv): Normal or Inverted by the sign of w, Unresolved inside the w band
    2. a spectral peak and rel_std > osc_std_min: Oscillatory
    3. rel_std < sr_std_max: Superradiant
    4. anything else: Unresolved
    """
    stats = steady_window_stats(traj, thresholds.window_fraction)
    w_final = min(0.5, max(-0.5, float(traj.w[-1])))

    if stats.mean < thresholds.eps_triv:
        if w_final > thresholds.w_band:
            label = PhaseLabel.NORMAL
        elif w_final < -thresholds.w_band:
            label = PhaseLabel.INVERTED
        else:
            label = PhaseLabel.UNRESOLVED
        return PhasePoint(label, stats.mean, stats.rel_std, w_final)

    spectrum = oscillation_spectrum(traj, thresholds.window_fraction)
    f_min = max(thresholds.f_min, 2.0 / spectrum.window_length)
    peak = dominant_peak(spectrum, f_min, thresholds.prominence_min)
    if peak is not None and stats.rel_std > thresholds.osc_std_min:
        logger.debug(f"oscillation at {peak.freq:.6g} Hz, prominence {peak.prominence:.3g}")
        return PhasePoint(PhaseLabel.OSCILLATORY, stats.mean, stats.rel_std, w_final, peak.freq, peak.prominence)
    if stats.rel_std < thresholds.sr_std_max:
        return PhasePoint(PhaseLabel.SUPERRADIANT, stats.mean, stats.rel_std, w_final)
    return PhasePoint(PhaseLabel.UNRESOLVED, stats.mean, stats.rel_std, w_final)


def transient_pulse(traj: Trajectory) -> PulseStats:
    """time, height and full width at half maximum of the largest |alpha|^2 pulse"""
    proxy = traj.abs_alpha_sq
    index = int(np.argmax(proxy))
    height = float(proxy[index])
    if height <= 0:
        return PulseStats(float(traj.t[index]), 0.0, 0.0)
    # half maximum measured from zero, not from the surrounding minima
    widths, _, _, _ = signal.peak_widths(
        proxy, [index], rel_height=0.5, prominence_data=(np.array([height]), np.array([0]), np.array([len(proxy) - 1]))
    )
    return PulseStats(float(traj.t[index]), height, float(widths[0]) * traj.dt_sample)
