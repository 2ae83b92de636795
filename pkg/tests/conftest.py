"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import os
import time

import numpy as np
import pytest

from dickephase import logger
from dickephase import phasemap_txt_parser
from dickephase.classifier import PhaseLabel, PhasePoint
from dickephase.model import ModelParams, to_angular
from dickephase.phasemap import PhaseMap, Provenance, SweepCell, SweepGrid
from dickephase.semiclassical import IntegratorSettings, Trajectory

# this file is automatically loaded by pytest we setup various shared fixtures here


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session", autouse=True)
def set_timezone():
    """Fakes the host timezone to UTC so we don't get different map headers if the tests run on different time
    zones, seems like freezegun can't handle timezones like we want"""
    if not os.name == "nt":
        os.environ["TZ"] = "UTC"
        time.tzset()
    else:
        os.system('tzutil /s "UTC"')


@pytest.fixture(autouse=True)
def reset_logging(monkeypatch):
    # commands switch verbose logging on, do not let it leak into the next test
    monkeypatch.setattr(logger, "verbose_logging", False)
    monkeypatch.setattr(logger, "debug_logging", False)
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)


@pytest.fixture
def balanced_model():
    """the operating point omega = 100 kHz, omega0 = -77 kHz, kappa = 100 kHz, couplings off"""
    return ModelParams.from_khz(100.0, -77.0, 0.0, 0.0, 100.0)


@pytest.fixture
def small_grid(balanced_model):
    """2 x 2 grid with a short horizon: ratio (0.5, 1) and lambda_max (30, 90) kHz"""
    return SweepGrid(
        ratio_axis=(0.5, 1.0),
        lambda_axis=(to_angular(30.0), to_angular(90.0)),
        base=balanced_model,
        integrator=IntegratorSettings(horizon=2e-3),
    )


def synthetic_trajectory(proxy, dt=1e-6, w=None):
    """trajectory whose |alpha|^2 follows proxy, alpha real and positive"""
    proxy = np.asarray(proxy, dtype=float)
    n = len(proxy)
    return Trajectory(
        t=np.arange(n) * dt,
        alpha=np.sqrt(proxy) + 0j,
        beta=np.zeros(n, dtype=complex),
        w=np.full(n, 0.5) if w is None else np.asarray(w, dtype=float),
        model=ModelParams.from_khz(100.0, -77.0, 0.0, 0.0, 100.0),
        rel_tol=1e-8,
        abs_tol=1e-10,
    )


def fake_phase_map(grid, labels=None, completed="2026-01-15T13:20:00+00:00"):
    """map with a made-up cell for every index in labels (default: all cells Normal)"""
    if labels is None:
        labels = {index: PhaseLabel.NORMAL for index in grid.indices()}
    cells = {}
    for index, label in labels.items():
        if label is PhaseLabel.OSCILLATORY:
            point = PhasePoint(label, 0.125, 0.3, 0.1, 4321.5, 42.0)
        elif label is PhaseLabel.INVERTED:
            point = PhasePoint(label, 1e-12, 0.0, -0.5)
        elif label is PhaseLabel.NORMAL:
            point = PhasePoint(label, 1e-12, 0.0, 0.5)
        else:
            point = PhasePoint(label, 0.1435, 0.001, 0.2)
        cells[index] = SweepCell(point, grid.integrator.horizon)
    provenance = Provenance.new(grid, "2026-01-15T13:00:00+00:00")
    provenance = Provenance(
        provenance.tool_name, provenance.tool_version, provenance.config_hash, provenance.created, completed
    )
    return PhaseMap(grid=grid, provenance=provenance, cells=cells)


@pytest.fixture
def make_trajectory():
    return synthetic_trajectory


@pytest.fixture
def make_phase_map():
    return fake_phase_map


@pytest.fixture
def written_map(tmp_path, small_grid):
    """path of a complete map file of the small grid with one cell of every stored label"""
    labels = {
        (0, 0): PhaseLabel.INVERTED,
        (0, 1): PhaseLabel.OSCILLATORY,
        (1, 0): PhaseLabel.NORMAL,
        (1, 1): PhaseLabel.SUPERRADIANT,
    }
    path = str(tmp_path / "map.csv")
    phasemap_txt_parser.write_phase_map(fake_phase_map(small_grid, labels), path)
    return path


@pytest.fixture
def config_file(fs):
    """a small configuration in the fake file system"""
    fs.create_file(
        "/work/run.cfg",
        contents=(
            "[model]\n"
            "omega_khz = 100\n"
            "omega0_khz = -77\n"
            "lambda_plus_khz = 75\n"
            "lambda_minus_khz = 75\n"
            "kappa_khz = 100\n"
            "\n"
            "[integrator]\n"
            "horizon_ms = 2\n"
            "\n"
            "[sweep]\n"
            "ratio_steps = 3\n"
            "lambda_steps = 2\n"
        ),
    )
    return "/work/run.cfg"
