import functools

import numpy as np
import pytest

import pylie.config as config
from pylie.chevalley import build_simple
from pylie.classical import build_partition_nilpotent
from pylie.slice import read_catalog, find_orbit, build_orbit


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point the config file into the test's tmp directory."""
    path = tmp_path / ".pylie_config.json"
    monkeypatch.setattr(config, "CONFIG_PATH", str(path))
    return path


@pytest.fixture(scope="session")
def catalog():
    return read_catalog()


@functools.lru_cache(maxsize=None)
def _orbit(key):
    return build_orbit(find_orbit(read_catalog(), key))


@functools.lru_cache(maxsize=None)
def _partition(family, parts):
    return build_partition_nilpotent(family, list(parts))


@pytest.fixture(scope="session")
def orbit():
    """orbit("E6:1") -> Sl2Triple, built once per session."""
    return _orbit


@pytest.fixture(scope="session")
def partition_nilpotent():
    """partition_nilpotent("so", (5, 3)) -> PartitionNilpotent, built once per session."""
    return _partition


@pytest.fixture(scope="session")
def sl2():
    algebra, _, basis = build_simple("A", 1)
    return algebra, basis


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
