"""Shared pytest fixtures for all tests."""

import sys
from pathlib import Path

import numpy as np
import pytest
import toml

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from ghf_lattice.core.covariance import random_mixed_cm, random_pure_cm  # noqa: E402
from ghf_lattice.model.hubbard import ModelSpec, build_hubbard  # noqa: E402


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run lattice-scale benchmarks"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# ============================================================================
# Model Fixtures
# ============================================================================


@pytest.fixture
def spec_2x2():
    """Attractive 2×2 Hubbard model (M = 8), small enough for every oracle."""
    return ModelSpec(n_h=2, n_v=2, u=-4.0)


@pytest.fixture
def hubbard_2x2(spec_2x2):
    """Majorana form of the attractive 2×2 model."""
    return build_hubbard(spec_2x2)


@pytest.fixture
def free_2x2():
    """Non-interacting 2×2 model shifted off half filling so no level sits at zero."""
    return build_hubbard(ModelSpec(n_h=2, n_v=2, u=0.0, mu=0.5))


@pytest.fixture
def free_4x4():
    """Non-interacting 4×4 model at half filling."""
    return build_hubbard(ModelSpec(n_h=4, n_v=4, u=0.0))


# ============================================================================
# State Fixtures
# ============================================================================


@pytest.fixture
def pure_state_8():
    """Seeded random pure covariance matrix on 8 modes."""
    return random_pure_cm(8, seed=7)


@pytest.fixture
def mixed_state_8():
    """Seeded random strictly mixed covariance matrix on 8 modes."""
    return random_mixed_cm(8, seed=11)


@pytest.fixture
def rng():
    """Seeded generator for ad-hoc random inputs."""
    return np.random.default_rng(1234)


# ============================================================================
# Run Configuration Fixtures
# ============================================================================


@pytest.fixture
def small_config_data(tmp_path):
    """Configuration mapping for a fast 2×2 run writing below tmp_path."""
    return {
        "model": {"n_h": 2, "n_v": 2, "u": -2.0, "mu": 0.0},
        "observables": ["pairing_per_particle"],
        "seeds": [0],
        "output": str(tmp_path / "out"),
        "ground": {"dtau": 0.02},
    }


@pytest.fixture
def write_config(tmp_path):
    """Factory writing a configuration mapping to a TOML file and returning its path."""

    def _write(data: dict, name: str = "run.toml") -> Path:
        path = tmp_path / name
        path.write_text(toml.dumps(data))
        return path

    return _write
