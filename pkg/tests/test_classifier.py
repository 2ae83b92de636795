"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import math

import numpy as np
import pytest

from dickephase import errors
from dickephase.classifier import (
    ClassifierThresholds,
    PhaseLabel,
    PhasePoint,
    Spectrum,
    classify,
    dominant_peak,
    oscillation_spectrum,
    steady_window_stats,
    transient_pulse,
)
from dickephase.model import ModelParams
from dickephase.semiclassical import Trajectory

DT = 1e-6


def times(n):
    return np.arange(n) * DT


def test_constant_light_is_superradiant(make_trajectory):
    point = classify(make_trajectory(np.full(4000, 0.1)))
    assert point.label is PhaseLabel.SUPERRADIANT
    assert point.mean_photon_proxy == pytest.approx(0.1)
    assert point.rel_std < 1e-12
    assert point.peak_freq is None


def test_decaying_light_is_trivial(make_trajectory):
    proxy = 1e-3 * np.exp(-times(4000) / 50e-6)
    assert classify(make_trajectory(proxy)).label is PhaseLabel.NORMAL
    assert classify(make_trajectory(proxy, w=np.full(4000, -0.5))).label is PhaseLabel.INVERTED
    # no light but the spin is not polarized
    assert classify(make_trajectory(proxy, w=np.full(4000, 0.1))).label is PhaseLabel.UNRESOLVED


def test_w_final_is_clamped(make_trajectory):
    point = classify(make_trajectory(np.zeros(400), w=np.full(400, 0.5 + 1e-12)))
    assert point.label is PhaseLabel.NORMAL
    assert point.w_final == 0.5


def test_sinusoidal_light_is_oscillatory(make_trajectory):
    proxy = 0.1 * (1 + 0.5 * np.sin(2 * math.pi * 20e3 * times(8000)))
    point = classify(make_trajectory(proxy))
    assert point.label is PhaseLabel.OSCILLATORY
    assert point.rel_std == pytest.approx(0.5 / math.sqrt(2), rel=0.01)
    # within one frequency bin of the analysis window (0.5 ms segments)
    assert abs(point.peak_freq - 20e3) <= 2e3
    assert point.peak_prominence >= 10


def test_pure_sinusoid_spectrum(make_trajectory):
    proxy = 0.1 * (1 + 0.5 * np.sin(2 * math.pi * 20e3 * times(8000)))
    spectrum = oscillation_spectrum(make_trajectory(proxy))
    assert spectrum.freqs[0] == 0
    assert spectrum.power[0] == 0
    assert spectrum.window_length == pytest.approx(500 * DT)
    peak_bin = int(np.argmax(spectrum.power))
    assert spectrum.freqs[peak_bin] == pytest.approx(20e3)
    # everything outside the Hann main lobe is leakage free
    outside = np.ones(len(spectrum.power), dtype=bool)
    outside[peak_bin - 1 : peak_bin + 2] = False
    assert np.max(spectrum.power[outside]) < 1e-6 * spectrum.power[peak_bin]


def test_noise_is_not_oscillatory(make_trajectory):
    rng = np.random.default_rng(2026)
    false_oscillatory = 0
    draws = 1000
    for _ in range(draws):
        proxy = 0.1 + 0.01 * rng.standard_normal(2000)
        point = classify(make_trajectory(proxy))
        assert point.label is not PhaseLabel.SUPERRADIANT
        false_oscillatory += point.label is PhaseLabel.OSCILLATORY
    assert false_oscillatory < 0.01 * draws


def test_short_trajectory_is_rejected(make_trajectory):
    with pytest.raises(errors.TrajectoryTooShortError):
        classify(make_trajectory(np.full(100, 0.1)))
    # enough samples for the statistics but not for a spectrum
    with pytest.raises(errors.TrajectoryTooShortError):
        classify(make_trajectory(0.1 * (1 + 0.5 * np.sin(2 * math.pi * 20e3 * times(800)))))


def test_non_uniform_sampling_is_rejected():
    n = 4000
    t = times(n)
    t[-10] += 0.3 * DT
    proxy = 0.1 * (1 + 0.5 * np.sin(2 * math.pi * 20e3 * t))
    traj = Trajectory(
        t=t,
        alpha=np.sqrt(proxy) + 0j,
        beta=np.zeros(n, dtype=complex),
        w=np.full(n, 0.3),
        model=ModelParams.from_khz(100, -77, 0, 0, 100),
        rel_tol=1e-8,
        abs_tol=1e-10,
    )
    with pytest.raises(errors.NonUniformSamplingError):
        classify(traj)


def test_steady_window_stats(make_trajectory):
    proxy = np.concatenate([np.zeros(3000), np.full(1000, 0.2)])
    stats = steady_window_stats(make_trajectory(proxy), 0.25)
    assert stats.mean == pytest.approx(0.2)
    assert stats.rel_std == pytest.approx(0.0, abs=1e-12)
    assert stats.mean_w == 0.5
    with pytest.raises(errors.ParameterError):
        steady_window_stats(make_trajectory(proxy), 0.75)


def test_early_oscillation_that_settles_is_superradiant(make_trajectory):
    t = times(8000)
    proxy = 0.1 * (1 + 0.5 * np.sin(2 * math.pi * 20e3 * t) * np.exp(-t / 100e-6))
    assert classify(make_trajectory(proxy)).label is PhaseLabel.SUPERRADIANT


def test_dominant_peak():
    freqs = np.arange(0, 101) * 1e3
    power = np.full(101, 1e-3)
    power[40] = 1.0
    peak = dominant_peak(Spectrum(freqs, power, 1e-3), f_min=2e3, prominence_min=10)
    assert peak.freq == 40e3
    assert peak.prominence == pytest.approx(1000, rel=0.01)

    power[40] = 5e-3
    assert dominant_peak(Spectrum(freqs, power, 1e-3), f_min=2e3, prominence_min=10) is None
    assert dominant_peak(Spectrum(freqs, np.zeros(101), 1e-3), f_min=2e3) is None

    # f_min must stay two bins away from DC
    with pytest.raises(errors.ParameterError):
        dominant_peak(Spectrum(freqs, power, 1e-3), f_min=1e3)


def test_dominant_peak_at_the_band_edge():
    freqs = np.arange(0, 101) * 1e3
    power = np.full(101, 1e-3)
    power[:6] = [5.0, 4.0, 3.0, 2.0, 1.0, 0.5]
    peak = dominant_peak(Spectrum(freqs, power, 1e-3), f_min=2e3, prominence_min=10)
    assert peak.freq == 2e3
    assert peak.power == 3.0

    power[100] = 10.0
    assert dominant_peak(Spectrum(freqs, power, 1e-3), f_min=2e3, prominence_min=10).freq == 100e3


def test_spectrum_validation():
    with pytest.raises(errors.ParameterError):
        Spectrum(np.array([1.0, 2.0]), np.array([0.0, 0.0]), 1e-3)
    with pytest.raises(errors.ParameterError):
        Spectrum(np.array([0.0, 1.0]), np.array([0.0]), 1e-3)


def test_phase_point_invariants():
    PhasePoint(PhaseLabel.OSCILLATORY, 0.1, 0.3, 0.0, 20e3, 50.0)
    with pytest.raises(errors.ParameterError):
        PhasePoint(PhaseLabel.OSCILLATORY, 0.1, 0.3, 0.0)
    with pytest.raises(errors.ParameterError):
        PhasePoint(PhaseLabel.SUPERRADIANT, 0.1, 0.01, 0.0, 20e3, 50.0)
    with pytest.raises(errors.ParameterError):
        PhasePoint(PhaseLabel.NORMAL, -1.0, 0.0, 0.5)


def test_phase_label_from_string():
    assert PhaseLabel.from_string("Inverted") is PhaseLabel.INVERTED
    with pytest.raises(errors.ParameterError):
        PhaseLabel.from_string("Chaotic")


def test_thresholds_validation():
    assert ClassifierThresholds().prominence_min == 10.0
    with pytest.raises(errors.ParameterError):
        ClassifierThresholds(window_fraction=0.0)
    with pytest.raises(errors.ParameterError):
        ClassifierThresholds(w_band=0.5)
    with pytest.raises(errors.ParameterError):
        ClassifierThresholds(eps_triv=-1.0)


def test_classification_of_a_shortened_trajectory(make_trajectory):
    """an oscillation that dies out late still looks oscillatory to a short experimental window"""
    t = times(20000)
    envelope = np.where(t < 5e-3, 1.0, 0.0)
    proxy = 0.1 * (1 + 0.5 * np.sin(2 * math.pi * 20e3 * t) * envelope)
    traj = make_trajectory(proxy)
    assert classify(traj).label is PhaseLabel.SUPERRADIANT
    assert classify(traj.truncated(3e-3)).label is PhaseLabel.OSCILLATORY


def test_transient_pulse(make_trajectory):
    t = times(2000)
    sigma = 40e-6
    proxy = 0.3 * np.exp(-((t - 600e-6) ** 2) / (2 * sigma**2))
    pulse = transient_pulse(make_trajectory(proxy))
    assert pulse.peak_time == pytest.approx(600e-6)
    assert pulse.peak_value == pytest.approx(0.3)
    assert pulse.fwhm == pytest.approx(2 * math.sqrt(2 * math.log(2)) * sigma, abs=2 * DT)

    dark = transient_pulse(make_trajectory(np.zeros(100)))
    assert dark.peak_value == 0 and dark.fwhm == 0


@pytest.mark.parametrize("factor", [1e-3, 0.1, 10.0])
def test_classification_does_not_depend_on_the_light_level(make_trajectory, factor):
    t = times(8000)
    for proxy in (np.full(8000, 0.1), 0.1 * (1 + 0.5 * np.sin(2 * math.pi * 20e3 * t))):
        reference = classify(make_trajectory(proxy))
        scaled = classify(make_trajectory(factor * proxy))
        assert scaled.label is reference.label
        assert scaled.mean_photon_proxy == pytest.approx(factor * reference.mean_photon_proxy, rel=1e-12)
        assert scaled.rel_std == pytest.approx(reference.rel_std, rel=1e-9, abs=1e-12)
        assert scaled.peak_freq == reference.peak_freq


def test_shorter_windows_see_less_of_a_dying_oscillation(make_trajectory):
    t = times(8000)
    envelope = np.exp(-np.clip(t - 5e-3, 0.0, None) / 0.5e-3)
    proxy = 0.1 * (1 + 0.5 * np.sin(2 * math.pi * 20e3 * t) * envelope)
    traj = make_trajectory(proxy)
    rel_std = [steady_window_stats(traj, fraction).rel_std for fraction in (0.1, 0.2, 0.3, 0.4, 0.5)]
    assert all(shorter < longer for shorter, longer in zip(rel_std, rel_std[1:]))

    labels = [classify(traj, ClassifierThresholds(window_fraction=fraction)).label for fraction in (0.1, 0.5)]
    assert labels == [PhaseLabel.SUPERRADIANT, PhaseLabel.OSCILLATORY]
