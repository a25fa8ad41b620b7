"""Tests for run planning and execution."""

import numpy as np
import pytest

from ghf_lattice.config.settings import MAX_WORKERS
from ghf_lattice.core.covariance import vacuum_cm
from ghf_lattice.model.hubbard import ModelSpec
from ghf_lattice.runner.checkpoint import CheckpointError, CheckpointHeader, checkpoint_write
from ghf_lattice.runner.config import ConfigError, parse_config
from ghf_lattice.runner.jobs import Point, execute, plan_points, resolve_workers, run
from ghf_lattice.runner.records import RESULTS_FILE, SUMMARY_FILE


@pytest.mark.unit
class TestPlanning:
    """Tests for plan_points and resolve_workers."""

    def test_one_point_per_seed(self, small_config_data):
        """Test that single-mode runs fan out over seeds."""
        small_config_data["seeds"] = [0, 1, 2]
        points = plan_points(parse_config(small_config_data, mode="ground"))
        assert [p.seed for p in points] == [0, 1, 2]
        assert all(p.beta is None for p in points)

    def test_thermal_points_carry_beta(self, small_config_data):
        """Test that thermal points know their inverse temperature."""
        small_config_data["thermal"] = {"beta": 0.5}
        points = plan_points(parse_config(small_config_data, mode="thermal"))
        assert points[0].beta == 0.5

    def test_thermal_sweep_grid(self, small_config_data):
        """Test the Cartesian product of u, β and seeds."""
        small_config_data.update(
            seeds=[0, 1], sweep={"mode": "thermal", "u": [-1.0, -2.0], "beta": [0.1, 0.2]}
        )
        points = plan_points(parse_config(small_config_data, mode="sweep"))
        assert len(points) == 8
        assert {(p.spec.u, p.beta) for p in points} == {
            (-1.0, 0.1),
            (-1.0, 0.2),
            (-2.0, 0.1),
            (-2.0, 0.2),
        }
        assert all(p.mode == "thermal" for p in points)

    def test_ground_sweep_keeps_model_values(self, small_config_data):
        """Test that omitted axes take the model value."""
        small_config_data["sweep"] = {"mu": [0.0, 0.5, 1.0]}
        points = plan_points(parse_config(small_config_data, mode="sweep"))
        assert [p.spec.mu for p in points] == [0.0, 0.5, 1.0]
        assert {p.spec.u for p in points} == {-2.0}

    def test_point_tag(self):
        """Test the checkpoint file tag of a point."""
        point = Point("thermal", ModelSpec(n_h=2, n_v=2, u=-2.0), seed=3, beta=0.5)
        assert point.tag == "thermal_u-2_mu0_vt0_b0.5_s3"

    def test_resolve_workers(self):
        """Test the --threads resolution."""
        assert resolve_workers(None) == MAX_WORKERS
        assert resolve_workers(-1) == -1
        assert resolve_workers(3) == 3

    @pytest.mark.parametrize("threads", [0, -2])
    def test_resolve_workers_rejects(self, threads):
        """Test that meaningless worker counts raise ConfigError."""
        with pytest.raises(ConfigError) as excinfo:
            resolve_workers(threads)
        assert excinfo.value.key == "threads"


@pytest.mark.unit
class TestExecute:
    """Tests for execute on small models."""

    def test_ground_row(self, small_config_data):
        """Test a converged ground row with the requested extra column."""
        outcome = execute(parse_config(small_config_data, mode="ground"), n_jobs=1)
        assert outcome.converged
        (row,) = outcome.rows
        assert row["mode"] == "ground"
        assert row["residual"] <= 1e-8
        assert row["entropy"] == pytest.approx(0.0, abs=1e-6)
        assert "pairing_per_particle" in row

    def test_ground_is_deterministic(self, small_config_data):
        """Test bit-identical rows for the same seed."""
        config = parse_config(small_config_data, mode="ground")
        first = execute(config, n_jobs=1).rows[0]
        second = execute(config, n_jobs=1).rows[0]
        assert first["energy"] == second["energy"]

    def test_thermal_from_mixed_state(self, small_config_data):
        """Test a thermal point started from the maximally mixed state."""
        small_config_data["thermal"] = {"beta": 0.5, "start": "mixed"}
        outcome = execute(parse_config(small_config_data, mode="thermal"), n_jobs=1)
        (row,) = outcome.rows
        assert row["beta"] == 0.5
        assert row["free_energy"] == pytest.approx(row["energy"] - row["entropy"] / 0.5)
        assert outcome.converged

    def test_static_dynamics_rows(self, small_config_data):
        """Test one row per time step with the step index."""
        small_config_data["dynamics"] = {"t_final": 0.1, "dt": 0.05}
        outcome = execute(parse_config(small_config_data, mode="dynamics"), n_jobs=1)
        assert [row["steps"] for row in outcome.rows] == [0, 1, 2]
        assert outcome.rows[-1]["time"] == pytest.approx(0.1)

    def test_ramp_rows_record_parameter(self, small_config_data):
        """Test that a ramp stores the instantaneous parameter in its column."""
        small_config_data["dynamics"] = {"t_final": 0.1, "dt": 0.05, "parameter": "u", "end": 0.0}
        outcome = execute(parse_config(small_config_data, mode="dynamics"), n_jobs=1)
        assert [row["u"] for row in outcome.rows] == pytest.approx([-2.0, -1.0, 0.0])

    def test_checkpoints_written(self, small_config_data):
        """Test that final states are checkpointed on request."""
        small_config_data["checkpoints"] = True
        outcome = execute(parse_config(small_config_data, mode="ground"), n_jobs=1)
        (path,) = outcome.checkpoints
        assert path.name == "ground_u-2_mu0_vt0_s0.ghfcm"

    def test_checkpoint_mode_mismatch(self, small_config_data, tmp_path):
        """Test that a checkpoint from another lattice size is refused."""
        spec = ModelSpec(n_h=3, n_v=2)
        header = CheckpointHeader.from_spec(spec)
        path = checkpoint_write(vacuum_cm(12), header, tmp_path / "x.ghfcm")
        small_config_data["thermal"] = {
            "beta": 0.5,
            "start": "checkpoint",
            "checkpoint": str(path),
        }
        with pytest.raises(CheckpointError, match="M=12"):
            execute(parse_config(small_config_data, mode="thermal"), n_jobs=1)

    def test_run_writes_artifacts(self, small_config_data, tmp_path):
        """Test that run leaves results.csv and summary.yaml in the output directory."""
        config = parse_config(small_config_data, mode="ground")
        run(config, n_jobs=1)
        assert (config.output / RESULTS_FILE).exists()
        assert (config.output / SUMMARY_FILE).exists()

    def test_unconverged_is_reported(self, small_config_data):
        """Test that a step cap marks the row and the run as unconverged."""
        small_config_data["ground"] = {"dtau": 0.02, "max_steps": 1}
        outcome = execute(parse_config(small_config_data, mode="ground"), n_jobs=1)
        assert not outcome.converged
        assert outcome.rows[0]["converged"] is False
        assert np.isfinite(outcome.rows[0]["energy"])

    def test_ground_start_reuses_ground_run(self, small_config_data):
        """Test that a ground-started evolution begins from the state a ground run returns."""
        ground = execute(parse_config(small_config_data, mode="ground"), n_jobs=1).rows[0]
        small_config_data["dynamics"] = {"t_final": 0.05, "dt": 0.05, "initial": "ground"}
        first = execute(parse_config(small_config_data, mode="dynamics"), n_jobs=1).rows[0]
        assert first["energy"] == pytest.approx(ground["energy"], rel=1e-10)
        assert first["pairing_per_particle"] == pytest.approx(
            ground["pairing_per_particle"], abs=1e-12
        )

    def test_unconverged_ground_start_is_reported(self, small_config_data):
        """Test that a thermal point inherits an unconverged ground start."""
        small_config_data["ground"] = {"dtau": 0.02, "max_steps": 1}
        small_config_data["thermal"] = {"beta": 0.5, "start": "ground"}
        outcome = execute(parse_config(small_config_data, mode="thermal"), n_jobs=1)
        assert not outcome.converged
