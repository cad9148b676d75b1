"""Shared fixtures for the herdisc test suite."""

import numpy as np
import pytest

from herdisc.config import Config
from herdisc.core.linalg import RandomSource


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run desk-scale benchmark reproductions")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def isolated_log_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(Config, "LOG_DIR", str(tmp_path / "logs"))
    yield


@pytest.fixture
def rng_factory():
    return RandomSource


@pytest.fixture
def sign_matrix():
    def make(m, n, seed=0):
        return RandomSource(seed).signs((m, n))
    return make


@pytest.fixture
def small_matrices():
    """A handful of matrices small enough for the exhaustive oracles."""
    rng = RandomSource(99)
    return [
        np.eye(3),
        np.array([[1.0, 1.0], [1.0, -1.0]]),
        np.zeros((2, 3)),
        rng.signs((5, 4)),
        (rng.uniform((6, 5)) < 0.5).astype(float),
        rng.gaussian(12).reshape(4, 3),
    ]
