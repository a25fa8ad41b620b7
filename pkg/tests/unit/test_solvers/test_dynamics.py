"""Tests for real-time evolution."""

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.linalg import expm

from ghf_lattice.core.covariance import random_mixed_cm, random_pure_cm, random_slater_cm
from ghf_lattice.model.hamiltonian import particle_number
from ghf_lattice.model.hubbard import ModelSpec, build_hubbard
from ghf_lattice.solvers.dynamics import (
    LinearRampSource,
    RampProtocol,
    StaticHamiltonian,
    evolve,
    ramp_interaction,
    ramp_trap,
)
from ghf_lattice.solvers.ground import minimize_energy


def _drift(hamiltonian, gamma0, dt, t_final=0.5):
    trajectory = evolve(StaticHamiltonian(hamiltonian), gamma0, t_final, dt=dt)
    energies = trajectory.records["energy"]
    return abs(energies.iloc[-1] - energies.iloc[0])


@pytest.mark.unit
class TestRampProtocol:
    """Tests for the linear ramp schedule."""

    def test_value_at(self):
        """Test endpoints, midpoint and clamping outside [0, T]."""
        ramp = RampProtocol(parameter="u", start=-2.0, end=2.0, t_final=4.0)
        assert ramp.value_at(0.0) == -2.0
        assert ramp.value_at(2.0) == 0.0
        assert ramp.value_at(4.0) == 2.0
        assert ramp.value_at(10.0) == 2.0

    def test_reversed(self):
        """Test that the reversed ramp swaps its endpoints."""
        ramp = RampProtocol(parameter="v_t", start=0.1, end=0.25, t_final=1.0).reversed()
        assert (ramp.start, ramp.end) == (0.25, 0.1)

    def test_rejects_zero_duration(self):
        """Test that a ramp needs a positive duration."""
        with pytest.raises(ValidationError):
            RampProtocol(parameter="u", start=0.0, end=1.0, t_final=0.0)

    def test_rejects_unknown_parameter(self):
        """Test that only u, mu and v_t can be ramped."""
        with pytest.raises(ValidationError):
            RampProtocol(parameter="t", start=0.0, end=1.0, t_final=1.0)


@pytest.mark.unit
class TestLinearRampSource:
    """Tests for the ramped Hamiltonian source."""

    def test_endpoint_matches_direct_build(self):
        """Test that the interpolated Hamiltonian at T equals a direct build at the end value."""
        spec = ModelSpec(n_h=2, n_v=2, u=-1.0, mu=0.2)
        protocol = RampProtocol(parameter="u", start=-2.0, end=2.0, t_final=1.0)
        source = LinearRampSource(spec, protocol)
        direct = build_hubbard(spec.model_copy(update={"u": 2.0}))
        ramped = source.hamiltonian_at(1.0)
        assert np.allclose(ramped.T, direct.T)
        assert np.allclose(ramped.weights, direct.weights)
        assert ramped.e0 == pytest.approx(direct.e0)

    def test_parameters_at(self):
        """Test that the source reports the instantaneous parameter value."""
        spec = ModelSpec(n_h=2, n_v=2)
        protocol = RampProtocol(parameter="mu", start=0.0, end=1.0, t_final=2.0)
        source = LinearRampSource(spec, protocol)
        assert source.parameters_at(0.5) == {"mu": 0.25}


@pytest.mark.unit
class TestEvolve:
    """Tests for the midpoint integrator."""

    def test_slater_conserves_particle_number(self, hubbard_2x2):
        """Test that a number-conserving start keeps N to roundoff."""
        gamma0 = random_slater_cm(8, 3, seed=2)
        trajectory = evolve(StaticHamiltonian(hubbard_2x2), gamma0, 1.0, dt=0.05)
        assert np.allclose(trajectory.records["particle_number"], 3.0, atol=1e-10)
        assert particle_number(trajectory.final_gamma) == pytest.approx(3.0, abs=1e-10)

    def test_energy_drift_is_second_order(self, hubbard_2x2):
        """Test that halving dt shrinks the energy drift by well over a factor two."""
        gamma0 = random_mixed_cm(8, seed=9)
        coarse = _drift(hubbard_2x2, gamma0, 0.02)
        fine = _drift(hubbard_2x2, gamma0, 0.01)
        assert coarse / fine > 3.0

    def test_ground_state_is_stationary(self, hubbard_2x2):
        """Test that a converged ground state barely moves."""
        ground = minimize_energy(hubbard_2x2, random_pure_cm(8, seed=0))
        trajectory = evolve(StaticHamiltonian(hubbard_2x2), ground.gamma, 1.0, dt=0.05)
        energies = trajectory.records["energy"]
        assert abs(energies.iloc[-1] - energies.iloc[0]) <= 1e-8
        assert np.allclose(trajectory.final_gamma.gamma, ground.gamma.gamma, atol=1e-6)

    @pytest.mark.parametrize("seed", [3, 4])
    def test_free_evolution_is_exact(self, seed):
        """Test Γ(t) = exp(4Tt)·Γ0·exp(4Tt)ᵀ when the Hamiltonian is quadratic."""
        hamiltonian = build_hubbard(ModelSpec(n_h=2, n_v=2, u=0.0, mu=0.3))
        gamma0 = random_mixed_cm(8, seed=seed)
        trajectory = evolve(StaticHamiltonian(hamiltonian), gamma0, 1.0, dt=0.05)
        o = expm(4.0 * hamiltonian.T * 1.0)
        expected = o @ gamma0.gamma @ o.T
        assert np.allclose(trajectory.final_gamma.gamma, expected, atol=1e-10)

    def test_zero_duration(self, hubbard_2x2):
        """Test that t_final = 0 records only the initial state."""
        trajectory = evolve(StaticHamiltonian(hubbard_2x2), random_pure_cm(8, seed=1), 0.0)
        assert len(trajectory.records) == 1
        assert list(trajectory.snapshots) == [0.0]

    def test_step_adjusted_to_end_time(self, hubbard_2x2):
        """Test that the step is shortened so the grid ends exactly at t_final."""
        trajectory = evolve(StaticHamiltonian(hubbard_2x2), random_pure_cm(8, seed=1), 1.0, dt=0.3)
        assert len(trajectory.times) == 4
        assert trajectory.times[-1] == pytest.approx(1.0)
        assert trajectory.records["time"].iloc[-1] == pytest.approx(1.0)

    def test_snapshot_stride(self, hubbard_2x2):
        """Test snapshots every stride steps plus the final state."""
        trajectory = evolve(
            StaticHamiltonian(hubbard_2x2),
            random_pure_cm(8, seed=1),
            1.0,
            dt=0.1,
            snapshot_stride=4,
        )
        assert sorted(trajectory.snapshots) == pytest.approx([0.0, 0.4, 0.8, 1.0])

    def test_extra_observables(self, spec_2x2, hubbard_2x2):
        """Test that requested scalars are recorded every step."""
        trajectory = evolve(
            StaticHamiltonian(hubbard_2x2),
            random_mixed_cm(8, seed=1),
            0.2,
            dt=0.1,
            observables=["entropy", "center_density"],
            lattice=spec_2x2.lattice,
        )
        assert {"entropy", "center_density"} <= set(trajectory.records.columns)
        # Unitary evolution keeps the spectrum of Γ
        assert trajectory.records["entropy"].std() < 1e-10

    @pytest.mark.parametrize(
        "kwargs,message",
        [
            ({"t_final": 1.0, "dt": 0.0}, "dt must be positive"),
            ({"t_final": -1.0}, "t_final must be non-negative"),
            ({"t_final": 1.0, "snapshot_stride": 0}, "snapshot_stride"),
            ({"t_final": 1.0, "observables": ["bogus"]}, "Unknown scalar"),
            ({"t_final": 1.0, "observables": ["entropy"]}, "needs a lattice"),
        ],
    )
    def test_invalid_arguments(self, hubbard_2x2, kwargs, message):
        """Test the argument checks of evolve."""
        with pytest.raises(ValueError, match=message):
            evolve(StaticHamiltonian(hubbard_2x2), random_pure_cm(8, seed=0), **kwargs)


@pytest.mark.unit
class TestRamps:
    """Tests for the interaction and trap ramp helpers."""

    def test_interaction_ramp_records_u(self):
        """Test that the ramped value is recorded alongside the observables."""
        spec = ModelSpec(n_h=2, n_v=2, u=-2.0)
        trajectory = ramp_interaction(spec, -2.0, 2.0, 0.2, random_pure_cm(8, seed=0), dt=0.1)
        assert trajectory.records["u"].tolist() == pytest.approx([-2.0, 0.0, 2.0])

    def test_reverse_trap_ramp_doubles_duration(self):
        """Test that a reversed trap ramp returns to the starting curvature at 2T."""
        spec = ModelSpec(n_h=2, n_v=2, u=-2.0, boundary="open")
        trajectory = ramp_trap(
            spec, 0.1, 0.3, 0.2, random_pure_cm(8, seed=0), dt=0.1, reverse=True
        )
        assert trajectory.times[-1] == pytest.approx(0.4)
        assert trajectory.records["v_t"].tolist() == pytest.approx([0.1, 0.2, 0.3, 0.2, 0.1])
        assert trajectory.records["time"].is_monotonic_increasing
