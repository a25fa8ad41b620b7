"""Integration tests: solver outputs against exact small-system references."""

import numpy as np
import pytest
from scipy.special import logsumexp

from ghf_lattice.core.covariance import random_pure_cm
from ghf_lattice.model.hamiltonian import energy
from ghf_lattice.model.hubbard import ModelSpec, build_hubbard
from ghf_lattice.oracle.fock import ed_ground, fock_hamiltonian
from ghf_lattice.oracle.gaussian import gaussian_density_operator
from ghf_lattice.oracle.suite import run_oracle_suite
from ghf_lattice.solvers.ground import minimize_energy
from ghf_lattice.solvers.thermal import gibbs_fixed_point


def exact_free_energy(hamiltonian, beta):
    """−ln tr e^{−βH} / β from the full spectrum."""
    values = np.linalg.eigvalsh(fock_hamiltonian(hamiltonian).dense())
    return float(-logsumexp(-beta * values) / beta)


@pytest.mark.integration
class TestVariationalBounds:
    """The Gaussian optimum never undercuts the exact answer."""

    @pytest.mark.parametrize("u", [-4.0, -1.0, 2.0, 4.0])
    def test_ground_energy_bound(self, u):
        """Test E_gHF ≥ E_ED on the 2×2 cluster."""
        hamiltonian = build_hubbard(ModelSpec(n_h=2, n_v=2, u=u))
        exact, _ = ed_ground(hamiltonian)
        result = minimize_energy(hamiltonian, random_pure_cm(hamiltonian.modes, seed=0))
        assert result.energy >= exact - 1e-10

    def test_free_model_is_exact(self, free_2x2):
        """Test that without interaction the flow reaches the exact ground energy."""
        exact, _ = ed_ground(free_2x2)
        result = minimize_energy(free_2x2, random_pure_cm(free_2x2.modes, seed=1))
        assert result.energy == pytest.approx(exact, abs=1e-9)

    @pytest.mark.parametrize("beta", [0.2, 1.0])
    def test_thermal_free_energy_bound(self, hubbard_2x2, beta):
        """Test F_gHF ≥ F_exact for the self-consistent Gibbs state."""
        result = gibbs_fixed_point(hubbard_2x2, beta)
        assert result.free_energy >= exact_free_energy(hubbard_2x2, beta) - 1e-10

    def test_free_thermal_is_exact(self, free_2x2):
        """Test that the free Gibbs state reproduces the exact partition function."""
        result = gibbs_fixed_point(free_2x2, 0.7)
        assert result.free_energy == pytest.approx(exact_free_energy(free_2x2, 0.7), abs=1e-10)


@pytest.mark.integration
class TestEnergyFunctional:
    """The Wick energy agrees with the Fock-space expectation value."""

    def test_ground_state_energy_in_fock_space(self, hubbard_2x2):
        """Test that the reported ground energy equals tr[ρ_Γ H]."""
        result = minimize_energy(hubbard_2x2, random_pure_cm(hubbard_2x2.modes, seed=2))
        rho = gaussian_density_operator(result.gamma)
        fock_value = fock_hamiltonian(hubbard_2x2).expectation(rho).real
        assert fock_value == pytest.approx(result.energy, abs=1e-9)
        assert energy(hubbard_2x2, result.gamma) == pytest.approx(result.energy, abs=1e-12)


@pytest.mark.integration
@pytest.mark.slow
class TestOracleSuite:
    """Full self-check suite."""

    def test_suite_passes(self):
        """Test that every oracle comparison passes."""
        report = run_oracle_suite(seed=0, samples=5)
        assert report.success, "\n".join(str(check) for check in report.failures)
        assert len(report.checks) == 11
