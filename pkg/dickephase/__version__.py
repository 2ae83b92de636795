"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""
from importlib.metadata import version, PackageNotFoundError

dickephase_tool_name = "dickephase"
try:
    dickephase_tool_version = version("dickephase")
except PackageNotFoundError:
    # running from a source checkout
    dickephase_tool_version = "0.0.0"

# bumped whenever a column is added to or removed from any emitted table
dickephase_schema_version = 1
dickephase_supported_schema_versions = [1]

dickephase_config_hash_format = "xxh128"
dickephase_cell_seed_format = "xxh64"
