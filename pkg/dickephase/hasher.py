"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"

xxhash based fingerprints: the config hash that ties a phase map to its grid, and per-cell seeds that do not
depend on evaluation order or worker count.
"""

import json

import xxhash

from .__version__ import dickephase_config_hash_format, dickephase_cell_seed_format

_hash_types = {
    "xxh64": xxhash.xxh64,
    "xxh128": xxhash.xxh128,
    "xxh3": xxhash.xxh3_64,
}


def hash_data(data: bytes, hash_format: str) -> str:
    """hex digest of data"""
    if hash_format not in _hash_types:
        raise ValueError(f"unsupported hash format {hash_format}")
    return _hash_types[hash_format](data).hexdigest()


def canonical_json(payload) -> str:
    """json with sorted keys and no whitespace, floats written with repr so they read back exactly"""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def config_hash(payload) -> str:
    return hash_data(canonical_json(payload).encode("utf-8"), dickephase_config_hash_format)


def cell_seed(global_seed: int, ratio_index: int, lambda_index: int) -> int:
    """seed for one grid cell, derived from the global seed and the cell position only"""
    key = f"{global_seed}:{ratio_index}:{lambda_index}".encode("utf-8")
    return _hash_types[dickephase_cell_seed_format](key).intdigest()
