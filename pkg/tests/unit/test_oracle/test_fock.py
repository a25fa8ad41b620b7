"""Tests for the Fock-space reference operators."""

import numpy as np
import pytest

from ghf_lattice.model.hamiltonian import MajoranaHamiltonian, quadratic_from_one_body
from ghf_lattice.model.hubbard import ModelSpec, build_hubbard
from ghf_lattice.oracle.fock import (
    OracleSizeError,
    anticommutator_errors,
    check_modes,
    ed_ground,
    fock_hamiltonian,
    fock_hubbard,
    majorana_operators,
)
from ghf_lattice.oracle.free_fermion import free_fermion_reference


@pytest.mark.unit
class TestOperators:
    """Tests for the Jordan-Wigner construction."""

    def test_canonical_anticommutation(self):
        """Test {c_k, c_l} = 2δ_kl on three modes."""
        assert max(anticommutator_errors(3)) <= 1e-12

    def test_majoranas_are_hermitian(self):
        """Test c_k = c_k† for every Majorana."""
        for op in majorana_operators(2):
            assert np.allclose(op.toarray(), op.conj().T.toarray())

    def test_size_cap(self):
        """Test that oversized Fock spaces are refused."""
        with pytest.raises(OracleSizeError, match="capped"):
            check_modes(13)

    def test_size_cap_on_lattice(self):
        """Test that a 4×4 lattice is too large for the exact Hamiltonian."""
        with pytest.raises(OracleSizeError):
            fock_hamiltonian(build_hubbard(ModelSpec(n_h=4, n_v=4, u=-4.0)))


@pytest.mark.unit
class TestHamiltonians:
    """Tests for the Fock-space Hamiltonians."""

    @pytest.mark.parametrize("form", ["symmetric", "plain"])
    def test_majorana_form_matches_second_quantized(self, form):
        """Test the Majorana builder against direct second quantization."""
        spec = ModelSpec(n_h=2, n_v=2, u=-4.0, mu=0.3, v_t=0.1, interaction_form=form)
        diff = fock_hamiltonian(build_hubbard(spec)).matrix - fock_hubbard(spec).matrix
        assert np.max(np.abs(diff.toarray())) <= 1e-12

    def test_hamiltonian_is_hermitian(self, hubbard_2x2):
        """Test that the Fock Hamiltonian is Hermitian."""
        assert fock_hamiltonian(hubbard_2x2).hermiticity_error() <= 1e-12

    def test_single_mode_levels(self):
        """Test that h·a†a has levels 0 and h."""
        t, e0 = quadratic_from_one_body([[1.5]])
        values = np.linalg.eigvalsh(fock_hamiltonian(MajoranaHamiltonian(T=t, e0=e0)).dense())
        assert values == pytest.approx([0.0, 1.5])

    def test_ed_matches_free_fermions(self, free_2x2):
        """Test exact diagonalization against the closed-form free ground energy."""
        exact, state = ed_ground(free_2x2)
        assert exact == pytest.approx(
            free_fermion_reference(free_2x2.T, e0=free_2x2.e0).energy, abs=1e-10
        )
        assert np.linalg.norm(state) == pytest.approx(1.0)
