"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import json
import os

import click

from . import classifier
from . import config as run_config
from . import errors
from . import logger
from . import model
from . import phasemap_txt_parser
from . import quantum
from . import render
from . import semiclassical
from . import stability
from . import sweep as sweeper
from . import tables
from . import utils


def verbose_option(func):
    return click.option(
        "--verbose",
        "-v",
        default=False,
        is_flag=True,
        help="Verbose output",
    )(func)


def config_option(func):
    return click.option(
        "--config",
        "-c",
        "config_path",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="Configuration file (.cfg), frequencies in kHz",
    )(func)


def model_options(func):
    """options overriding single model parameters of the configuration, all in kHz"""
    options = [
        click.option("--omega", "omega_khz", type=float, default=None, help="Cavity detuning omega/2pi in kHz"),
        click.option("--omega0", "omega0_khz", type=float, default=None, help="Spin splitting omega0/2pi in kHz"),
        click.option(
            "--lambda_plus", "-lp", "lambda_plus_khz", type=float, default=None, help="lambda+/2pi in kHz"
        ),
        click.option(
            "--lambda_minus", "-lm", "lambda_minus_khz", type=float, default=None, help="lambda-/2pi in kHz"
        ),
        click.option("--kappa", "kappa_khz", type=float, default=None, help="Cavity decay kappa/2pi in kHz"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _load(config_path, **model_khz):
    config = run_config.load_or_default(config_path)
    config = run_config.with_overrides(config, **model_khz)
    logger.verbose(f"model: {config.model.log_string()}")
    return config


def _verbosity(verbose):
    logger.verbose_logging = verbose


@click.command()
@config_option
@click.option(
    "--target_lambda",
    "target_lambda_khz",
    type=float,
    default=None,
    help="Also back-solve the Rabi coupling that yields this lambda/2pi (kHz)",
)
@click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="Write the values as a table")
@verbose_option
def calibrate(config_path, target_lambda_khz, out, verbose):
    """
    Map laboratory parameters onto the model

    \b
    Reads the [physical] section of the configuration and prints the model parameters
    together with the Raman detunings, their validity, the cooperativity and the
    spontaneous emission rate caused by each laser.
    """
    _verbosity(verbose)
    config = run_config.load_or_default(config_path)
    phys = config.physical
    if phys is None:
        raise errors.ParameterError("calibrate needs a configuration with a [physical] section")

    derived = model.derive_model_params(phys)
    detunings = model.raman_detunings(derived, phys.omega_z)
    cooperativity = model.cooperativity(phys.g, phys.kappa, phys.gamma_a)
    entries = [(key[:-4], value, "kHz") for key, value in derived.as_khz().items()]
    entries += [
        ("omega_d_formula", model.to_linear_khz(model.dispersive_shift(phys)), "kHz"),
        ("omega_d_used", model.to_linear_khz(model.effective_dispersive_shift(phys)), "kHz"),
        ("delta_plus", model.to_linear_khz(detunings.delta_plus), "kHz"),
        ("delta_minus", model.to_linear_khz(detunings.delta_minus), "kHz"),
        ("raman_validity_ratio", detunings.validity_ratio, ""),
        ("cooperativity", cooperativity, ""),
        (
            "gamma_s_plus",
            model.spontaneous_emission_rate(derived.lambda_plus, phys.n_atoms, cooperativity, phys.kappa),
            "1/s",
        ),
        (
            "gamma_s_minus",
            model.spontaneous_emission_rate(derived.lambda_minus, phys.n_atoms, cooperativity, phys.kappa),
            "1/s",
        ),
    ]
    if target_lambda_khz is not None:
        rabi = model.rabi_for_coupling(model.to_angular(target_lambda_khz), phys)
        entries.append(("rabi_for_target_lambda", model.to_linear_khz(rabi), "kHz"))

    for name, value, unit in entries:
        logger.info(f"{name:>24}: {value:.6g} {unit}".rstrip())
    if not detunings.valid:
        logger.warning(
            f"|delta+-| reaches {detunings.validity_ratio:.3g} of 2 omega_z, the two-level Raman picture is not valid"
        )
    if out:
        tables.write_calibration(entries, out)


@click.command()
@config_option
@model_options
@click.option("--horizon", "horizon_ms", type=float, default=None, help="Integration horizon in ms")
@click.option("--dt", "dt_us", type=float, default=None, help="Sample spacing in us")
@click.option("--rel_tol", type=float, default=None, help="Relative integrator tolerance")
@click.option("--abs_tol", type=float, default=None, help="Absolute integrator tolerance")
@click.option("--epsilon", type=float, default=None, help="Initial perturbation of beta")
@click.option("--seed", type=int, default=None, help="Give the perturbation a random phase from this seed")
@click.option(
    "--out",
    "-o",
    required=True,
    type=click.Path(dir_okay=False),
    help="Trajectory table, a .json path writes the json variant",
)
@click.option("--spectrum", type=click.Path(dir_okay=False), default=None, help="Also write the output spectrum")
@verbose_option
def trace(config_path, horizon_ms, dt_us, rel_tol, abs_tol, epsilon, seed, out, spectrum, verbose, **model_khz):
    """
    Integrate one mean-field trajectory and write it as a table
    """
    _verbosity(verbose)
    config = _load(config_path, **model_khz)
    settings = _integrator_settings(config.integrator, horizon_ms, dt_us, rel_tol, abs_tol, epsilon)
    traj = _trajectory(config.model, settings, seed)

    if os.path.splitext(out)[1].lower() == ".json":
        tables.write_trajectory_json(traj, out)
    else:
        tables.write_trajectory(traj, out)
    logger.verbose(f"wrote {len(traj)} samples to {out}, spin norm drift {traj.max_norm_drift:.3g}")
    if spectrum:
        tables.write_spectrum(classifier.oscillation_spectrum(traj, config.thresholds.window_fraction), spectrum)


def _integrator_settings(base, horizon_ms, dt_us, rel_tol, abs_tol, epsilon):
    return semiclassical.IntegratorSettings(
        horizon=base.horizon if horizon_ms is None else horizon_ms * 1e-3,
        dt_sample=base.dt_sample if dt_us is None else dt_us * 1e-6,
        rel_tol=base.rel_tol if rel_tol is None else rel_tol,
        abs_tol=base.abs_tol if abs_tol is None else abs_tol,
        epsilon=base.epsilon if epsilon is None else epsilon,
    )


def _trajectory(model_params, settings, seed):
    state0 = semiclassical.perturbed_initial(settings.epsilon, seed)
    return semiclassical.integrate_with(settings, state0, model_params)


@click.command()
@config_option
@model_options
@click.option(
    "--trajectory",
    "-t",
    "trajectory_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Classify this trajectory table instead of integrating one",
)
@click.option("--horizon", "horizon_ms", type=float, default=None, help="Integration horizon in ms")
@click.option("--seed", type=int, default=None, help="Give the perturbation a random phase from this seed")
@click.option(
    "--window",
    "window_ms",
    type=float,
    default=None,
    help="Only classify the first WINDOW ms (e.g. 3 for the length of an experimental pulse)",
)
@click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="Write the result as a table")
@verbose_option
def classify(config_path, trajectory_path, horizon_ms, seed, window_ms, out, verbose, **model_khz):
    """
    Classify a trajectory as Normal, Inverted, Superradiant or Oscillatory

    \b
    Either reads a trajectory table (--trajectory) or integrates one for the
    configured model parameters.
    """
    _verbosity(verbose)
    config = _load(config_path, **model_khz)
    if trajectory_path:
        traj = tables.read_trajectory(trajectory_path)
    else:
        settings = _integrator_settings(config.integrator, horizon_ms, None, None, None, None)
        traj = _trajectory(config.model, settings, seed)
    if window_ms is not None:
        traj = traj.truncated(window_ms * 1e-3)

    point = classifier.classify(traj, config.thresholds)
    logger.info(f"label: {point.label.value}")
    logger.info(f"mean |alpha|^2: {point.mean_photon_proxy:.6g}")
    logger.info(f"relative std: {point.rel_std:.6g}")
    logger.info(f"w final: {point.w_final:.6g}")
    if point.peak_freq is not None:
        logger.info(f"peak: {point.peak_freq / 1e3:.6g} kHz, prominence {point.peak_prominence:.3g}")
    pulse = classifier.transient_pulse(traj)
    logger.verbose(
        f"largest pulse: {pulse.peak_value:.6g} at {pulse.peak_time * 1e6:.6g} us, fwhm {pulse.fwhm * 1e6:.6g} us"
    )
    if out:
        tables.write_phase_point(point, traj.horizon, out)


@click.command()
@config_option
@model_options
@click.option(
    "--fixed_point",
    "-f",
    type=click.Choice(["normal", "inverted"], case_sensitive=False),
    default="normal",
    help="Trivial fixed point to analyse (w = +1/2 or w = -1/2)",
)
@click.option("--ratios", "-r", default="0:2:41", help="Ratio axis as start:stop:count or a list")
@click.option("--lambda_lo", "lambda_lo_khz", type=float, default=0.0, help="Lower bracket end in kHz")
@click.option("--lambda_hi", "lambda_hi_khz", type=float, default=300.0, help="Upper bracket end in kHz")
@click.option("--tol", "tol_khz", type=float, default=0.01, help="Bisection tolerance in kHz")
@click.option(
    "--transfer_at",
    "transfer_at_khz",
    type=float,
    multiple=True,
    help="Also locate the stability change along the ratio axis at this lambda_max (kHz), repeatable",
)
@click.option("--out", "-o", required=True, type=click.Path(dir_okay=False), help="Boundary table")
@verbose_option
def boundary(
    config_path, fixed_point, ratios, lambda_lo_khz, lambda_hi_khz, tol_khz, transfer_at_khz, out, verbose, **model_khz
):
    """
    Trace the stability boundary of a trivial fixed point

    \b
    For every ratio lambda+/lambda- the coupling lambda_max where the fixed point
    turns unstable is found by bisection on the largest Jacobian eigenvalue.
    """
    _verbosity(verbose)
    config = _load(config_path, **model_khz)
    fp = stability.FixedPoint.of(stability.FixedPointKind.from_string(fixed_point))
    bracket = (model.to_angular(lambda_lo_khz), model.to_angular(lambda_hi_khz))
    curve = stability.trace_boundary(
        fp, config.model, utils.parse_axis(ratios), bracket, tol=model.to_angular(tol_khz)
    )
    tables.write_boundary(curve, out)
    for lambda_max_khz in transfer_at_khz:
        ratio = stability.ratio_boundary_bisect(fp, config.model, model.to_angular(lambda_max_khz))
        if ratio is None:
            logger.info(f"lambda_max {lambda_max_khz:g} kHz: no stability change for ratios in [0, 1]")
        else:
            logger.info(f"lambda_max {lambda_max_khz:g} kHz: stability changes at ratio {ratio:.4f}")


@click.command()
@config_option
@click.option("--out", "-o", required=True, type=click.Path(dir_okay=False), help="Phase map file")
@click.option("--workers", "-w", type=int, default=1, help="Number of worker processes")
@click.option("--seed", type=int, default=None, help="Global seed for random perturbation phases")
@click.option(
    "--checkpoint_every",
    type=int,
    default=50,
    help="Write the partial map every N cells (0 disables checkpoints)",
)
@click.option("--resume", is_flag=True, default=False, help="Continue the sweep stored in --out")
@click.option(
    "--timestamps/--no-timestamps",
    default=False,
    help="Record start and completion times in the map header (the file then differs between runs)",
)
@verbose_option
def sweep(config_path, out, workers, seed, checkpoint_every, resume, timestamps, verbose):
    """
    Classify every cell of a (ratio, lambda_max) grid into a phase map

    \b
    The partially filled map is checkpointed into the output file while the
    sweep runs, an interrupted sweep continues with --resume.
    """
    _verbosity(verbose)
    config = run_config.load_or_default(config_path)
    grid = config.grid(seed)
    if resume:
        if not os.path.exists(out):
            raise errors.ParameterError(f"nothing to resume, {out} does not exist")
        phase_map = sweeper.resume_sweep(out, grid, workers, checkpoint_every, timestamps)
    else:
        phase_map = sweeper.run_sweep(grid, workers, out, checkpoint_every, timestamps)
    phasemap_txt_parser.write_phase_map(phase_map, out)
    counts = phase_map.label_counts()
    logger.info(", ".join(f"{label.value}: {count}" for label, count in counts.items()))


@click.command(name="render")
@click.argument("map_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("image_path", type=click.Path(dir_okay=False))
@click.option("--scale", "-s", type=int, default=1, help="Pixels per cell edge")
@click.option(
    "--allow-incomplete",
    "allow_incomplete",
    is_flag=True,
    default=False,
    help="Render a partial map, cells without a result are drawn blue",
)
@verbose_option
def render_map(map_path, image_path, scale, allow_incomplete, verbose):
    """
    Render a phase map file as an image (.ppm raster or .svg drawing)
    """
    _verbosity(verbose)
    if scale < 1:
        raise errors.ParameterError("scale must be at least 1")
    phase_map = phasemap_txt_parser.parse(map_path)
    render.render_phase_map(phase_map, image_path, scale=scale, allow_incomplete=allow_incomplete)


@click.command(name="quantum")
@config_option
@model_options
@click.option("--n_atoms", "-n", type=int, default=None, help="Atom number N (1..8)")
@click.option("--n_max", type=int, default=None, help="Photon number cutoff")
@click.option("--horizon", "horizon_us", type=float, default=None, help="Evolution time in us")
@click.option("--dt", "dt_us", type=float, default=None, help="Sample spacing in us")
@click.option("--tol", type=float, default=None, help="Relative integrator tolerance")
@click.option(
    "--initial_state",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="JSON list of [index, re, im] amplitudes of a pure initial state",
)
@click.option("--check_truncation", is_flag=True, default=False, help="Repeat the run with n_max + 4 and compare")
@click.option("--out", "-o", required=True, type=click.Path(dir_okay=False), help="Expectation table")
@verbose_option
def quantum_run(
    config_path, n_atoms, n_max, horizon_us, dt_us, tol, initial_state, check_truncation, out, verbose, **model_khz
):
    """
    Evolve the master equation for a few atoms and write the expectation values
    """
    _verbosity(verbose)
    config = _load(config_path, **model_khz)
    settings = config.quantum
    spec = quantum.HilbertSpec(
        settings.n_atoms if n_atoms is None else n_atoms, settings.n_max if n_max is None else n_max
    )
    horizon = settings.horizon if horizon_us is None else horizon_us * 1e-6
    dt_sample = settings.dt_sample if dt_us is None else dt_us * 1e-6
    tol = settings.tol if tol is None else tol

    if initial_state:
        with open(initial_state, "r", encoding="utf-8") as file:
            try:
                triples = json.load(file)
            except ValueError as e:
                raise errors.ParameterError(f"cannot read {initial_state}: {e}")
        rho0 = quantum.density_from_amplitudes(spec, triples)
    else:
        rho0 = quantum.initial_density(spec)

    series = quantum.evolve_density(rho0, config.model, spec, horizon, dt_sample, tol)
    tables.write_expectations(series, out)
    logger.verbose(
        f"max trace error {series.trace_error.max():.3g}, min eigenvalue {series.min_eigenvalue.min():.3g}"
    )
    if check_truncation:
        check = quantum.truncation_converged(config.model, spec, horizon, dt_sample, tol)
        state = "converged" if check.converged else "NOT converged"
        logger.info(f"truncation {state}: {check.max_relative_change:.3g}")


@click.command()
@config_option
@model_options
@click.option("--n", "n_range", default="1..6", help="Atom numbers, e.g. 1..6 or 1,2,4")
@click.option("--n_max", type=int, default=None, help="Photon number cutoff")
@click.option("--horizon", "horizon_us", type=float, default=None, help="Evolution time in us")
@click.option("--dt", "dt_us", type=float, default=None, help="Sample spacing in us")
@click.option(
    "--mean_field_horizon",
    "mean_field_ms",
    type=float,
    default=1.0,
    show_default=True,
    help="Length of the mean-field reference run in ms",
)
@click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="Write the report as a table")
@verbose_option
def compare(config_path, n_range, n_max, horizon_us, dt_us, mean_field_ms, out, verbose, **model_khz):
    """
    Compare quantum photon plateaus with the mean-field value for growing N
    """
    _verbosity(verbose)
    config = _load(config_path, **model_khz)
    settings = config.quantum
    report = quantum.compare_mean_field(
        config.model,
        utils.parse_int_range(n_range),
        n_max=settings.n_max if n_max is None else n_max,
        horizon=settings.horizon if horizon_us is None else horizon_us * 1e-6,
        dt_sample=settings.dt_sample if dt_us is None else dt_us * 1e-6,
        tol=settings.tol,
        mean_field_horizon=mean_field_ms * 1e-3,
    )
    logger.info(f"{'N':>3} {'quantum':>12} {'mean field':>12} {'gap':>8}")
    for gap in report.gaps:
        logger.info(f"{gap.n_atoms:>3} {gap.quantum_plateau:>12.6g} {gap.semiclassical_plateau:>12.6g} {gap.gap:>8.3g}")
    logger.info(f"gap shrinks monotonically: {'yes' if report.monotone else 'no'}")
    logger.info(f"gap at the largest N below the smallest N: {'yes' if report.shrinks else 'no'}")
    if out:
        tables.write_compare(report, out)
