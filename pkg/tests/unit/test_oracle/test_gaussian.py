"""Tests for Gaussian density operators and the flow-rate checks."""

import numpy as np
import pytest

from ghf_lattice.core.covariance import random_mixed_cm, random_pure_cm, vacuum_cm
from ghf_lattice.core.wick import wick_four
from ghf_lattice.model.hamiltonian import energy
from ghf_lattice.model.hubbard import ModelSpec, build_hubbard
from ghf_lattice.oracle.fock import (
    FockOperator,
    OracleSizeError,
    fock_hamiltonian,
    majorana_operators,
    number_operator,
)
from ghf_lattice.oracle.gaussian import (
    fock_covariance,
    gaussian_density_operator,
    rate_check_imag,
    rate_check_real,
)


@pytest.mark.unit
class TestGaussianDensityOperator:
    """Tests for ρ(Γ)."""

    def test_trace_one(self):
        """Test tr ρ = 1."""
        rho = gaussian_density_operator(random_mixed_cm(3, seed=1))
        assert np.trace(rho.dense()) == pytest.approx(1.0)

    def test_reproduces_covariance(self):
        """Test that the second moments of ρ give back Γ."""
        cm = random_mixed_cm(3, seed=2)
        assert np.allclose(fock_covariance(gaussian_density_operator(cm)), cm.gamma, atol=1e-10)

    def test_vacuum(self):
        """Test that the vacuum covariance matrix gives the empty projector."""
        rho = gaussian_density_operator(vacuum_cm(2))
        assert number_operator(2).expectation(rho) == pytest.approx(0.0, abs=1e-12)
        assert rho.dense()[0, 0] == pytest.approx(1.0)

    def test_four_point_function(self):
        """Test a Fock-space four-point function against Wick's theorem."""
        cm = random_mixed_cm(3, seed=3)
        rho = gaussian_density_operator(cm)
        c = majorana_operators(3)
        product = FockOperator(c[0] @ c[2] @ c[3] @ c[5], 3)
        assert product.expectation(rho) == pytest.approx(wick_four(cm, 0, 2, 3, 5), abs=1e-10)

    def test_energy_functional(self):
        """Test E(Γ) against tr[ρH] for an interacting model."""
        hamiltonian = build_hubbard(ModelSpec(n_h=2, n_v=2, u=-3.0, mu=0.1))
        cm = random_mixed_cm(8, seed=4)
        fock_value = fock_hamiltonian(hamiltonian).expectation(gaussian_density_operator(cm))
        assert fock_value.real == pytest.approx(energy(hamiltonian, cm), abs=1e-10)

    def test_size_cap(self):
        """Test that density operators beyond the cap are refused."""
        with pytest.raises(OracleSizeError):
            gaussian_density_operator(vacuum_cm(11))


@pytest.mark.unit
class TestRateChecks:
    """Tests for the brute-force flow-equation checks."""

    def test_real_time_rate(self, hubbard_2x2):
        """Test dΓ/dt = 4[h̄, Γ] against the Heisenberg equation."""
        assert rate_check_real(hubbard_2x2, random_pure_cm(8, seed=5)) <= 1e-8

    def test_imaginary_time_rate(self, hubbard_2x2):
        """Test the pure-state imaginary-time rate against normalized Fock evolution."""
        assert rate_check_imag(hubbard_2x2, random_pure_cm(8, seed=6)) <= 1e-8

    @pytest.mark.parametrize("seed", [12, 13])
    def test_real_time_rate_on_mixed_state(self, hubbard_2x2, seed):
        """Test that the real-time rate holds for strictly mixed interacting states."""
        assert rate_check_real(hubbard_2x2, random_mixed_cm(8, seed=seed)) <= 1e-8

    def test_quadratic_rates_on_mixed_state(self):
        """Test both rates on a mixed state when the Hamiltonian has no quartic part."""
        free = build_hubbard(ModelSpec(n_h=2, n_v=2, u=0.0, mu=0.3))
        gamma = random_mixed_cm(8, seed=14)
        assert rate_check_real(free, gamma) <= 1e-10
        assert rate_check_imag(free, gamma) <= 1e-10

    def test_interacting_imaginary_rate_on_mixed_state_is_finite(self, hubbard_2x2):
        """Test that the mixed-state imaginary-time diagnostic returns a finite deviation."""
        assert np.isfinite(rate_check_imag(hubbard_2x2, random_mixed_cm(8, seed=15)))

    def test_rate_check_size_cap(self):
        """Test that rate checks refuse more than eight modes."""
        hamiltonian = build_hubbard(ModelSpec(n_h=3, n_v=2, u=-1.0))
        with pytest.raises(OracleSizeError):
            rate_check_real(hamiltonian, random_pure_cm(12, seed=0))
