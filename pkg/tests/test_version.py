"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import pytest
from click.testing import CliRunner

from dickephase import errors
from dickephase import phasemap_txt_parser
from dickephase import tables
from dickephase.__version__ import (
    dickephase_config_hash_format,
    dickephase_schema_version,
    dickephase_supported_schema_versions,
    dickephase_tool_name,
    dickephase_tool_version,
)
from dickephase.cli.dickephase import dickephase_cli


def test_version():
    runner = CliRunner()
    result = runner.invoke(dickephase_cli, "--version")
    assert result.exit_code == 0
    assert dickephase_tool_version in result.output


def test_written_schema_is_readable():
    assert dickephase_schema_version in dickephase_supported_schema_versions
    assert dickephase_schema_version == max(dickephase_supported_schema_versions)


def test_map_header_names_tool_and_schema(tmp_path, small_grid, make_phase_map):
    path = str(tmp_path / "map.csv")
    phasemap_txt_parser.write_phase_map(make_phase_map(small_grid), path)
    with open(path, "r", encoding="utf-8") as file:
        header = [next(file).rstrip("\n") for _ in range(4)]
    assert header[1] == f"# schema_version: {dickephase_schema_version}"
    assert header[2] == f"# tool: {dickephase_tool_name} {dickephase_tool_version}"
    assert header[3] == f"# config_hash: {small_grid.config_hash()}"
    provenance = phasemap_txt_parser.parse(path).provenance
    assert provenance.schema_version == dickephase_schema_version


def test_config_hash_format(small_grid):
    assert dickephase_config_hash_format == "xxh128"
    # 128 bits as hex
    assert len(small_grid.config_hash()) == 32


def test_tables_carry_the_schema_version(tmp_path):
    path = str(tmp_path / "compare.csv")
    tables.write_table(path, "compare", ["n_atoms"], [[1]])
    metadata, columns, rows = tables.read_table(path, "compare")
    assert metadata["schema_version"] == str(dickephase_schema_version)
    assert columns == ["n_atoms"]
    assert rows == [["1"]]


def test_tables_of_a_newer_schema_are_rejected(tmp_path):
    path = tmp_path / "compare.csv"
    tables.write_table(str(path), "compare", ["n_atoms"], [[1]])
    newer = max(dickephase_supported_schema_versions) + 1
    text = path.read_text(encoding="utf-8")
    path.write_text(
        text.replace(f"# schema_version: {dickephase_schema_version}", f"# schema_version: {newer}"), encoding="utf-8"
    )
    with pytest.raises(errors.SchemaVersionError):
        tables.read_table(str(path), "compare")
