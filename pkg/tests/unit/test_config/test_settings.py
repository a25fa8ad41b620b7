"""Tests for configuration constants and environment settings."""

import importlib

import pytest

from ghf_lattice import config
from ghf_lattice.config import paths, settings, solvers


@pytest.mark.unit
class TestPaths:
    """Tests for project paths."""

    def test_configs_live_in_project_root(self):
        """Test that the shipped configurations sit next to the package."""
        assert paths.CONFIGS_DIR.parent == paths.PROJ_ROOT
        assert (paths.PROJ_ROOT / "ghf_lattice").is_dir()

    def test_runs_dir(self):
        """Test the default output root."""
        assert paths.RUNS_DIR == paths.PROJ_ROOT / "runs"


@pytest.mark.unit
class TestSolverDefaults:
    """Tests for numerical defaults."""

    def test_tolerance_ordering(self):
        """Test that roundoff tolerances are tighter than physical ones."""
        assert solvers.ANTISYMMETRY_TOL < solvers.PHYSICALITY_TOL
        assert solvers.GROUND_RESIDUAL_TOL <= solvers.PHYSICALITY_TOL

    def test_oracle_caps(self):
        """Test that the rate check fits inside the density-operator cap."""
        assert solvers.RATE_CHECK_MAX_MODES <= solvers.DENSITY_MAX_MODES <= solvers.FOCK_MAX_MODES

    def test_public_names(self):
        """Test that every exported name resolves."""
        for name in config.__all__:
            assert hasattr(config, name), name


@pytest.mark.unit
class TestEnvironment:
    """Tests for environment-driven settings."""

    def test_worker_cap_from_environment(self, monkeypatch):
        """Test that GHF_MAX_WORKERS caps the sweep workers."""
        monkeypatch.setenv("GHF_MAX_WORKERS", "3")
        try:
            assert importlib.reload(settings).MAX_WORKERS == 3
        finally:
            monkeypatch.delenv("GHF_MAX_WORKERS")
            importlib.reload(settings)

    def test_log_level_from_environment(self, monkeypatch):
        """Test that GHF_LOG_LEVEL sets the default level."""
        monkeypatch.setenv("GHF_LOG_LEVEL", "DEBUG")
        try:
            assert importlib.reload(settings).LOG_LEVEL == "DEBUG"
        finally:
            monkeypatch.delenv("GHF_LOG_LEVEL")
            importlib.reload(settings)
