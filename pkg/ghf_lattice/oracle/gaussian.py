"""Gaussian density operators and brute-force checks of the covariance-matrix flow equations."""

import numpy as np
import scipy.sparse as sp
from numpy.typing import NDArray

from ghf_lattice.config.solvers import DENSITY_MAX_MODES, RATE_CHECK_MAX_MODES
from ghf_lattice.core.covariance import GammaLike, gamma_array
from ghf_lattice.core.linalg import commutator, skew_eigh
from ghf_lattice.model.hamiltonian import MajoranaHamiltonian, mean_field
from ghf_lattice.oracle.fock import (
    FockOperator,
    check_modes,
    fock_hamiltonian,
    majorana_operators,
)
from ghf_lattice.validation.validators import require_modes, validate_covariance


def gaussian_density_operator(gamma: GammaLike) -> FockOperator:
    """Fock-space density operator of the Gaussian state with covariance matrix Γ.

    Γ is brought to canonical form through the eigenvectors of iΓ: for each eigenvalue
    λ_j ≥ 0 with eigenvector v_j the real vectors x_j = √2·Re v_j and y_j = √2·Im v_j span
    a rotated Majorana pair d_x, d_y, and ρ = 2^{−M} Π_j (𝟙 + iλ_j d_y d_x).

    Raises:
        OracleSizeError: If M exceeds DENSITY_MAX_MODES
        CovarianceValidationError: If Γ is not physical
    """
    g = gamma_array(gamma)
    modes = g.shape[0] // 2
    check_modes(modes, DENSITY_MAX_MODES, "Gaussian density operator")
    validate_covariance(g, context="density operator input")

    c = majorana_operators(modes)
    values, vectors = skew_eigh(g)
    dim = 2**modes
    rho = sp.identity(dim, format="csr", dtype=complex)
    # eigh sorts ascending, so the upper half of the spectrum holds the λ_j ≥ 0
    for lam, v in zip(values[modes:], vectors[:, modes:].T):
        if lam == 0.0:
            continue
        x, y = np.sqrt(2.0) * v.real, np.sqrt(2.0) * v.imag
        d_x = sum(xi * ck for xi, ck in zip(x, c) if xi != 0.0)
        d_y = sum(yi * ck for yi, ck in zip(y, c) if yi != 0.0)
        factor = sp.identity(dim, format="csr") + 1j * lam * (d_y @ d_x)
        rho = rho @ factor
    return FockOperator(sp.csr_matrix(rho / dim), modes)


def fock_covariance(rho: FockOperator) -> NDArray[np.float64]:
    """Γ_kl = tr[ρ (i/2)[c_k, c_l]] evaluated in Fock space."""
    c = majorana_operators(rho.modes)
    dim = 2 * rho.modes
    out = np.zeros((dim, dim))
    for k in range(dim):
        for l in range(k + 1, dim):
            value = FockOperator(sp.csr_matrix(1j * (c[k] @ c[l])), rho.modes).expectation(rho)
            out[k, l] = value.real
            out[l, k] = -value.real
    return out


def _prepare(hamiltonian: MajoranaHamiltonian, gamma: GammaLike):
    g = gamma_array(gamma)
    require_modes(g, hamiltonian.modes, "rate check")
    check_modes(hamiltonian.modes, RATE_CHECK_MAX_MODES, "Rate check")
    return g, fock_hamiltonian(hamiltonian).matrix, gaussian_density_operator(g).matrix


def _pair_traces(kernel: sp.csr_matrix, modes: int) -> NDArray[np.complex128]:
    """tr[c_α c_β K] for all α < β, returned as a strictly upper-triangular array."""
    c = majorana_operators(modes)
    dim = 2 * modes
    kernel_t = sp.csr_matrix(kernel.T)
    out = np.zeros((dim, dim), dtype=complex)
    for a in range(dim):
        for b in range(a + 1, dim):
            out[a, b] = (c[a] @ c[b]).multiply(kernel_t).sum()
    return out


def real_time_rates(hamiltonian: MajoranaHamiltonian, gamma: GammaLike) -> NDArray[np.float64]:
    """dΓ/dt from the Heisenberg equation, tr[c_α c_β [H, ρ]], with ρ the Gaussian state of Γ."""
    g, h, rho = _prepare(hamiltonian, gamma)
    upper = _pair_traces(h @ rho - rho @ h, hamiltonian.modes).real
    return upper - upper.T


def imaginary_time_rates(
    hamiltonian: MajoranaHamiltonian, gamma: GammaLike
) -> NDArray[np.float64]:
    """dΓ/dτ of normalized imaginary-time evolution, −i·tr[c_α c_β {H, ρ}] + 2Γ_αβ·tr[Hρ]."""
    g, h, rho = _prepare(hamiltonian, gamma)
    energy = complex((h.multiply(rho.T)).sum()).real
    upper = (-1j * _pair_traces(h @ rho + rho @ h, hamiltonian.modes)).real
    upper = upper + 2.0 * np.triu(g, k=1) * energy
    return upper - upper.T


def rate_check_real(hamiltonian: MajoranaHamiltonian, gamma: GammaLike) -> float:
    """max |Fock-space rate − 4[h̄(Γ), Γ]| over all entries.

    Raises:
        OracleSizeError: If M exceeds RATE_CHECK_MAX_MODES
    """
    g = gamma_array(gamma)
    analytic = 4.0 * commutator(mean_field(hamiltonian, g), g)
    return float(np.max(np.abs(real_time_rates(hamiltonian, g) - analytic)))


def rate_check_imag(hamiltonian: MajoranaHamiltonian, gamma: GammaLike) -> float:
    """max off-diagonal |Fock-space rate + 4(Γh̄Γ + h̄)|.

    Only meaningful for pure Γ; for mixed Γ the value is a diagnostic.

    Raises:
        OracleSizeError: If M exceeds RATE_CHECK_MAX_MODES
    """
    g = gamma_array(gamma)
    hbar = mean_field(hamiltonian, g)
    analytic = -4.0 * (g @ hbar @ g + hbar)
    diff = imaginary_time_rates(hamiltonian, g) - analytic
    np.fill_diagonal(diff, 0.0)
    return float(np.max(np.abs(diff)))
