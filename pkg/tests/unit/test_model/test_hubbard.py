"""Tests for the Hubbard model builder."""

import numpy as np
import pytest
from pydantic import ValidationError

from ghf_lattice.core.covariance import product_state_cm, vacuum_cm
from ghf_lattice.model.hamiltonian import energy
from ghf_lattice.model.hubbard import ModelSpec, build_hubbard, one_body_matrix, onsite_quads


def _spin_polarized(n_sites):
    return product_state_cm([1.0] * n_sites + [0.0] * n_sites)


@pytest.mark.unit
class TestModelSpec:
    """Tests for the model specification."""

    def test_defaults(self):
        """Test default periodic symmetric model with t = 1."""
        spec = ModelSpec(n_h=3, n_v=2)
        assert spec.boundary == "periodic"
        assert spec.interaction_form == "symmetric"
        assert spec.t == 1.0
        assert spec.n_modes == 12

    def test_rejects_small_lattice(self):
        """Test that extents below 2 fail validation."""
        with pytest.raises(ValidationError):
            ModelSpec(n_h=1, n_v=4)

    def test_rejects_unknown_field(self):
        """Test that misspelled parameters are not silently ignored."""
        with pytest.raises(ValidationError):
            ModelSpec(n_h=2, n_v=2, U=-4.0)

    def test_rejects_unknown_form(self):
        """Test that only the two interaction forms are accepted."""
        with pytest.raises(ValidationError):
            ModelSpec(n_h=2, n_v=2, interaction_form="extended")

    def test_is_frozen(self):
        """Test that a spec cannot be mutated."""
        spec = ModelSpec(n_h=2, n_v=2)
        with pytest.raises(ValidationError):
            spec.u = 1.0


@pytest.mark.unit
class TestBuildHubbard:
    """Tests for the Majorana form of the Hubbard model."""

    def test_dimensions(self, hubbard_2x2):
        """Test 2M = 16 Majoranas and one quartic term per site."""
        assert hubbard_2x2.dim == 16
        assert hubbard_2x2.quads.shape == (4, 4)
        assert np.allclose(hubbard_2x2.weights, -1.0)

    def test_quads_couple_one_site(self):
        """Test the on-site quadruple (s↑, s↓, s↑+M, s↓+M)."""
        quads = onsite_quads(ModelSpec(n_h=2, n_v=2).lattice)
        assert quads[1].tolist() == [1, 5, 9, 13]

    def test_quartic_table_kept_at_zero_u(self):
        """Test that free models keep the index table so they combine with interacting ones."""
        free = build_hubbard(ModelSpec(n_h=2, n_v=2, u=0.0))
        assert free.quads.shape == (4, 4)
        assert free.is_quadratic

    def test_symmetric_form_on_vacuum(self):
        """Test E = u·N_sites/4 on the empty lattice."""
        h = build_hubbard(ModelSpec(n_h=2, n_v=2, u=3.0))
        assert energy(h, vacuum_cm(8)) == pytest.approx(3.0)

    def test_plain_form_on_vacuum(self):
        """Test E = 0 on the empty lattice in the plain form."""
        h = build_hubbard(ModelSpec(n_h=2, n_v=2, u=3.0, interaction_form="plain"))
        assert energy(h, vacuum_cm(8)) == pytest.approx(0.0, abs=1e-12)

    def test_plain_form_on_full_lattice(self):
        """Test E = u·N_sites on the doubly occupied lattice."""
        h = build_hubbard(ModelSpec(n_h=2, n_v=2, u=3.0, interaction_form="plain"))
        assert energy(h, product_state_cm([1.0] * 8)) == pytest.approx(12.0)

    def test_symmetric_form_on_singly_occupied(self):
        """Test E = −u·N_sites/4 with one spin-up fermion per site."""
        h = build_hubbard(ModelSpec(n_h=2, n_v=2, u=3.0))
        assert energy(h, _spin_polarized(4)) == pytest.approx(-3.0)

    def test_chemical_potential(self):
        """Test that μ adds μ·N on a product state."""
        h = build_hubbard(ModelSpec(n_h=2, n_v=2, mu=0.7))
        assert energy(h, _spin_polarized(4)) == pytest.approx(0.7 * 4)


@pytest.mark.unit
class TestOneBodyMatrix:
    """Tests for the quadratic one-body part."""

    def test_block_diagonal_in_spin(self):
        """Test that hopping never flips spin."""
        h = one_body_matrix(ModelSpec(n_h=3, n_v=3))
        assert np.array_equal(h[:9, 9:], np.zeros((9, 9)))
        assert np.array_equal(h[:9, :9], h[9:, 9:])

    def test_trap_on_diagonal(self):
        """Test μ_x = μ + V_t·distance² on the diagonal."""
        h = one_body_matrix(ModelSpec(n_h=3, n_v=3, mu=1.0, v_t=0.5, boundary="open"))
        assert h[4, 4] == pytest.approx(1.0)
        assert h[0, 0] == pytest.approx(2.0)

    def test_plain_form_shift(self):
        """Test the u/2 on-site shift of the plain form."""
        h = one_body_matrix(ModelSpec(n_h=2, n_v=2, u=-4.0, interaction_form="plain"))
        assert np.allclose(np.diag(h), -2.0)
