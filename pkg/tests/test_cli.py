"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import os

import numpy as np
import pytest
from click.testing import CliRunner
from freezegun import freeze_time
from testfixtures import TempDirectory, compare

from dickephase import errors
from dickephase import phasemap_txt_parser
from dickephase import quantum
from dickephase import render
from dickephase import semiclassical
from dickephase import tables
from dickephase.classifier import PhaseLabel
from dickephase.cli.dickephase import dickephase_cli

CALIBRATION_CONFIG = os.path.normpath(os.path.join(os.path.dirname(__file__), "..", "configs", "calibration.cfg"))
ONE_PHOTON_STATE = os.path.join(os.path.dirname(__file__), "fixtures", "one_photon.json")

SWEEP_CONFIG = (
    "[integrator]\n"
    "horizon_ms = 2\n"
    "\n"
    "[sweep]\n"
    "ratio_min = 0.5\n"
    "ratio_max = 1\n"
    "ratio_steps = 2\n"
    "lambda_min_khz = 0\n"
    "lambda_max_khz = 30\n"
    "lambda_steps = 2\n"
)


@pytest.fixture
def runner():
    return CliRunner()


def test_commands_are_listed_in_order(runner):
    result = runner.invoke(dickephase_cli, ["--help"])
    assert result.exit_code == 0
    listed = [line.split()[0] for line in result.output.split("Commands:")[1].splitlines() if line.strip()]
    assert listed == ["calibrate", "trace", "classify", "boundary", "sweep", "render", "quantum", "compare"]


def test_calibrate(fs, runner):
    fs.add_real_file(CALIBRATION_CONFIG, target_path="/work/lab.cfg")
    result = runner.invoke(dickephase_cli, ["calibrate", "-c", "/work/lab.cfg", "--out", "/work/cal.csv"])
    assert result.exit_code == 0
    assert "cooperativity: 4.0333" in result.output
    assert "not valid" not in result.output

    _, columns, rows = tables.read_table("/work/cal.csv", "calibration")
    values = {row[0]: float(row[1]) for row in rows}
    assert values["omega"] == pytest.approx(100.0, abs=0.01)
    assert values["omega0"] == pytest.approx(-77.0)
    assert values["lambda_minus"] == pytest.approx(50.3, rel=1e-5)
    assert values["omega_d_formula"] == pytest.approx(-1270.34, rel=1e-5)
    assert values["delta_plus"] == pytest.approx(-23.0, abs=0.05)
    assert values["gamma_s_plus"] == pytest.approx(18.92, rel=1e-3)


def test_calibrate_needs_physical_parameters(config_file, runner):
    result = runner.invoke(dickephase_cli, ["calibrate", "-c", config_file])
    assert result.exit_code == 1
    assert "[physical]" in result.output


def test_trace_without_coupling_is_dark(fs, runner):
    result = runner.invoke(dickephase_cli, ["trace", "-lp", "0", "-lm", "0", "--horizon", "0.1", "--out", "/t.csv"])
    assert result.exit_code == 0
    traj = tables.read_trajectory("/t.csv")
    assert len(traj) == 101
    assert np.all(traj.abs_alpha_sq == 0)

    result = runner.invoke(dickephase_cli, ["trace", "--horizon", "2", "--out", "/t.json", "--spectrum", "/s.csv"])
    assert result.exit_code == 0
    stored = tables.read_trajectory("/t.json")
    assert len(stored) == 2001
    assert np.all(stored.abs_alpha_sq == 0)
    _, columns, _ = tables.read_table("/s.csv", "spectrum")
    assert columns == tables.SPECTRUM_COLUMNS


def test_classify(fs, runner):
    result = runner.invoke(dickephase_cli, ["classify", "--horizon", "1", "--out", "/point.csv"])
    assert result.exit_code == 0
    assert "label: Normal" in result.output
    _, _, rows = tables.read_table("/point.csv", "classification")
    assert rows[0][0] == "Normal"


def test_classify_a_stored_trajectory(fs, runner, make_trajectory):
    tables.write_trajectory(make_trajectory(np.full(4000, 0.1)), "/lit.csv")
    result = runner.invoke(dickephase_cli, ["classify", "-t", "/lit.csv", "-v"])
    assert result.exit_code == 0
    assert "label: Superradiant" in result.output
    assert "largest pulse" in result.output

    # a window too short for the statistics
    result = runner.invoke(dickephase_cli, ["classify", "-t", "/lit.csv", "--window", "0.05"])
    assert result.exit_code == 1


def test_boundary(fs, runner):
    result = runner.invoke(dickephase_cli, ["boundary", "-r", "1", "--out", "/b.csv"])
    assert result.exit_code == 0
    _, _, rows = tables.read_table("/b.csv", "boundary")
    assert len(rows) == 1
    assert float(rows[0][1]) == pytest.approx(62.05, rel=1e-3)

    result = runner.invoke(
        dickephase_cli, ["boundary", "-f", "inverted", "-r", "0.2,0.9", "--transfer_at", "93", "--out", "/i.csv"]
    )
    assert result.exit_code == 0
    assert "stability changes at ratio 0.50" in result.output
    _, _, rows = tables.read_table("/i.csv", "boundary")
    assert rows[0][1] == ""


@pytest.fixture
def workdir():
    tmpdir = TempDirectory()
    tmpdir.write("sweep.cfg", SWEEP_CONFIG.encode("utf-8"))
    yield tmpdir
    tmpdir.cleanup()


def test_sweep_and_render(workdir, runner):
    map_path = os.path.join(workdir.path, "map.csv")

    arguments = ["sweep", "-c", os.path.join(workdir.path, "sweep.cfg"), "--out", map_path]
    result = runner.invoke(dickephase_cli, arguments + ["--checkpoint_every", "1"])
    assert result.exit_code == 0
    assert "Normal:" in result.output

    result = runner.invoke(dickephase_cli, arguments + ["--resume", "-v"])
    assert result.exit_code == 0
    assert "nothing to compute" in result.output

    image_path = os.path.join(workdir.path, "map.ppm")
    result = runner.invoke(dickephase_cli, ["render", map_path, image_path, "--scale", "2"])
    assert result.exit_code == 0
    image = render.read_ppm(image_path)
    assert image.shape == (4, 4, 3)
    # lambda_max = 0 is always Normal
    assert np.all(image[:, :2] == 255)


def test_sweep_resume_needs_a_file(tmp_path, runner):
    result = runner.invoke(dickephase_cli, ["sweep", "--out", str(tmp_path / "missing.csv"), "--resume"])
    assert result.exit_code == 1


def test_render_rejects_zero_scale(written_map, tmp_path, runner):
    result = runner.invoke(dickephase_cli, ["render", written_map, str(tmp_path / "map.ppm"), "-s", "0"])
    assert result.exit_code == 1


def test_render_of_a_corrupt_map(fs, runner):
    fs.create_file("/map.csv", contents="# dickephase phase map\n# schema_version: 1\n")
    result = runner.invoke(dickephase_cli, ["render", "/map.csv", "/map.ppm"])
    assert result.exit_code == 1
    assert "byte offset" in result.output


def test_sweep_files_do_not_depend_on_workers(workdir, runner, monkeypatch):
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)
    config = os.path.join(workdir.path, "sweep.cfg")
    contents = []
    for run, workers in enumerate(["1", "2", "1", "2"]):
        map_path = os.path.join(workdir.path, f"map{run}.csv")
        result = runner.invoke(dickephase_cli, ["sweep", "-c", config, "--out", map_path, "-w", workers])
        assert result.exit_code == 0
        contents.append(workdir.read(f"map{run}.csv"))
    assert all(content == contents[0] for content in contents[1:])
    assert b"# created: \n" in contents[0] or b"# created:\n" in contents[0]


@freeze_time("2026-01-15 13:20:00")
def test_sweep_with_timestamps(workdir, runner):
    map_path = os.path.join(workdir.path, "map.csv")
    arguments = ["sweep", "-c", os.path.join(workdir.path, "sweep.cfg"), "--out", map_path, "--timestamps"]
    result = runner.invoke(dickephase_cli, arguments)
    assert result.exit_code == 0
    provenance = phasemap_txt_parser.parse(map_path).provenance
    assert provenance.created == "2026-01-15T13:20:00+00:00"
    assert provenance.completed == "2026-01-15T13:20:00+00:00"


def test_render_of_a_partial_map(tmp_path, small_grid, make_phase_map, runner):
    map_path = str(tmp_path / "map.csv")
    image_path = str(tmp_path / "map.ppm")
    phasemap_txt_parser.write_phase_map(make_phase_map(small_grid, {(0, 0): PhaseLabel.NORMAL}, None), map_path)

    result = runner.invoke(dickephase_cli, ["render", map_path, image_path])
    assert result.exit_code == 1
    assert "3 cells have no result" in result.output
    assert not os.path.exists(image_path)

    result = runner.invoke(dickephase_cli, ["render", map_path, image_path, "--allow-incomplete"])
    assert result.exit_code == 0
    assert "incomplete" in result.output
    assert render.read_ppm(image_path).shape == (2, 2, 3)


def test_quantum(fs, runner):
    arguments = ["quantum", "-n", "1", "--n_max", "4", "--horizon", "2", "-lp", "0", "-lm", "0"]
    result = runner.invoke(dickephase_cli, arguments + ["--out", "/q.csv"])
    assert result.exit_code == 0
    metadata, columns, rows = tables.read_table("/q.csv", "expectation")
    assert metadata["n_atoms"] == "1"
    assert len(rows) == 5
    assert all(float(row[6]) == 0 for row in rows)
    assert float(rows[-1][5]) == pytest.approx(0.5)


def test_quantum_from_amplitudes(fs, runner):
    fs.add_real_file(ONE_PHOTON_STATE, target_path="/state.json")
    result = runner.invoke(
        dickephase_cli,
        ["quantum", "-n", "1", "--n_max", "4", "--horizon", "1", "--initial_state", "/state.json", "--out", "/q.csv"],
    )
    assert result.exit_code == 0
    _, _, rows = tables.read_table("/q.csv", "expectation")
    # index 6 is m = 0 with one photon
    assert float(rows[0][5]) == pytest.approx(0.0)
    assert float(rows[0][6]) == pytest.approx(1.0)

    fs.create_file("/broken.json", contents="[[6, 1.0")
    result = runner.invoke(
        dickephase_cli, ["quantum", "--n_max", "4", "--initial_state", "/broken.json", "--out", "/q.csv"]
    )
    assert result.exit_code == 1


def test_quantum_rejects_large_systems(fs, runner):
    result = runner.invoke(dickephase_cli, ["quantum", "-n", "9", "--out", "/q.csv"])
    assert result.exit_code == 1
    assert "Invalid Hilbert space" in result.output


def test_compare(fs, runner, mocker):
    report = quantum.CompareReport(
        [quantum.MeanFieldGap(1, 0.2, 0.348, 0.425), quantum.MeanFieldGap(2, 0.26, 0.348, 0.253)]
    )
    compare_mock = mocker.patch.object(quantum, "compare_mean_field", return_value=report)
    result = runner.invoke(dickephase_cli, ["compare", "--n", "1,2", "--out", "/c.csv"])
    assert result.exit_code == 0
    assert compare_mock.call_args.args[1] == [1, 2]
    assert compare_mock.call_args.kwargs["mean_field_horizon"] == pytest.approx(1e-3)
    assert "gap shrinks monotonically: yes" in result.output
    assert "gap at the largest N below the smallest N: yes" in result.output
    metadata, _, rows = tables.read_table("/c.csv", "compare")
    assert metadata["monotone"] == "true"
    assert metadata["shrinks"] == "true"
    compare([["1", "0.2", "0.348", "0.425"], ["2", "0.26", "0.348", "0.253"]], actual=rows)


def test_usage_errors_exit_with_one(runner):
    result = runner.invoke(dickephase_cli, ["trace"])
    assert result.exit_code == 1
    assert "--out" in result.output
    assert runner.invoke(dickephase_cli, ["unknown"]).exit_code == 1
    assert runner.invoke(dickephase_cli, ["boundary", "-f", "sideways", "--out", "b.csv"]).exit_code == 1


def test_numerical_failure_exits_with_two(fs, runner, mocker):
    mocker.patch.object(semiclassical, "integrate_with", side_effect=errors.StiffnessError(1e-3))
    result = runner.invoke(dickephase_cli, ["trace", "--out", "/t.csv"])
    assert result.exit_code == 2
    assert "Step size underflow" in result.output
