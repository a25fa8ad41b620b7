"""Tests for the critical-exponent fit."""

import numpy as np
import pytest

from ghf_lattice.observables.critical import fit_critical_exponent


@pytest.fixture
def temperatures():
    return np.round(np.arange(0.30, 0.70, 0.01), 2)


@pytest.mark.unit
class TestFitCriticalExponent:
    """Tests for fit_critical_exponent."""

    def test_recovers_mean_field_exponent(self, temperatures):
        """Test that an exact linear onset gives γ = 1 and the true T_c."""
        pairing = 2.0 * np.clip(0.505 - temperatures, 0.0, None)
        fit = fit_critical_exponent(temperatures, pairing)
        assert fit.gamma == pytest.approx(1.0, abs=1e-4)
        assert fit.t_c == pytest.approx(0.505, abs=1e-4)
        assert fit.amplitude == pytest.approx(2.0, rel=1e-3)
        assert fit.n_points == 21

    def test_input_order_is_irrelevant(self, temperatures):
        """Test that shuffled input gives the same fit."""
        pairing = 2.0 * np.clip(0.505 - temperatures, 0.0, None)
        order = np.random.default_rng(0).permutation(temperatures.size)
        shuffled = fit_critical_exponent(temperatures[order], pairing[order])
        assert shuffled.gamma == pytest.approx(fit_critical_exponent(temperatures, pairing).gamma)

    def test_no_ordered_points(self, temperatures):
        """Test that a fully unpaired sweep raises."""
        with pytest.raises(ValueError, match="No transition"):
            fit_critical_exponent(temperatures, np.zeros_like(temperatures))

    def test_pairing_never_vanishes(self, temperatures):
        """Test that a sweep ordered throughout raises."""
        with pytest.raises(ValueError, match="never vanishes"):
            fit_critical_exponent(temperatures, np.ones_like(temperatures))

    def test_too_few_points(self, temperatures):
        """Test that a narrow ordered window raises."""
        pairing = np.where(temperatures < 0.33, 0.1, 0.0)
        with pytest.raises(ValueError, match="at least"):
            fit_critical_exponent(temperatures, pairing)

    def test_length_mismatch(self):
        """Test that inputs of unequal length raise."""
        with pytest.raises(ValueError, match="equal length"):
            fit_critical_exponent([0.1, 0.2], [1.0])
