"""
__author__ = "The dickephase developers"
__copyright__ = "Copyright 2026, The dickephase developers"

__license__ = "MIT"
__maintainer__ = "The dickephase developers"
"""

import pytest

from dickephase.hasher import canonical_json, cell_seed, config_hash, hash_data


def test_hash_data():
    # the data to hash
    data = b"media-hash-list"
    # map of hash algorithm to expected hash value
    hash_type_and_value = {
        "xxh64": "584b2ea1974f2b7c",
        "xxh3": "6d4cbd75905c81aa",
        "xxh128": "61a67c014f703a456ee7a776fd8c06bd",
    }
    for k, v in hash_type_and_value.items():
        assert hash_data(data, k) == v

    with pytest.raises(ValueError):
        hash_data(data, "md5")


def test_canonical_json_ignores_key_order():
    assert canonical_json({"b": 1, "a": [0.1, 2]}) == '{"a":[0.1,2],"b":1}'
    assert canonical_json({"a": [0.1, 2], "b": 1}) == canonical_json({"b": 1, "a": [0.1, 2]})
    with pytest.raises(ValueError):
        canonical_json({"a": float("nan")})


def test_config_hash():
    payload = {"ratio_axis": [0.0, 0.5, 1.0], "horizon": 0.02}
    assert config_hash(payload) == config_hash(dict(reversed(list(payload.items()))))
    assert len(config_hash(payload)) == 32
    assert config_hash(payload) != config_hash({"ratio_axis": [0.0, 0.5, 1.0], "horizon": 0.021})


def test_cell_seed_depends_on_position_only():
    assert cell_seed(7, 3, 4) == cell_seed(7, 3, 4)
    seeds = {cell_seed(7, i, j) for i in range(10) for j in range(10)}
    assert len(seeds) == 100
    assert cell_seed(7, 3, 4) != cell_seed(8, 3, 4)
    assert 0 <= cell_seed(7, 3, 4) < 2**64
