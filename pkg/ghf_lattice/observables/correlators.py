"""Complex-mode correlators and the real-space observables built from them.

All observables reuse the two M×M blocks C = ⟨a†a⟩ and F = ⟨a†a†⟩ assembled once from Γ;
four-point functions follow from Wick's theorem on those blocks.
"""

from typing import Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ghf_lattice.core.covariance import GammaLike, gamma_array
from ghf_lattice.model.hamiltonian import particle_number
from ghf_lattice.model.lattice import Lattice

Displacement = Union[int, Tuple[int, int], Sequence[int]]


def complex_correlators(gamma: GammaLike) -> Tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    """The normal and anomalous correlators of Γ.

    Returns:
        (C, F) with C_ab = ⟨a†_a a_b⟩ (Hermitian) and F_ab = ⟨a†_a a†_b⟩ (antisymmetric)
    """
    g = gamma_array(gamma)
    m = g.shape[0] // 2
    g11, g12, g21, g22 = g[:m, :m], g[:m, m:], g[m:, :m], g[m:, m:]
    eye = np.eye(m)
    c = 0.25 * (2.0 * eye - 1j * g11 - g12 + g21 - 1j * g22)
    f = 0.25 * (-1j * g11 + g12 + g21 + 1j * g22)
    return c, f


def cm_from_correlators(c: ArrayLike, f: ArrayLike) -> NDArray[np.float64]:
    """Inverse of ``complex_correlators``: the covariance matrix with the given C and F.

    Raises:
        ValueError: If C is not Hermitian, F is not antisymmetric or their shapes differ
    """
    c = np.asarray(c, dtype=complex)
    f = np.asarray(f, dtype=complex)
    if c.shape != f.shape or c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError(f"C and F must be square and of equal shape, got {c.shape}, {f.shape}")
    if np.max(np.abs(c - c.conj().T), initial=0.0) > 1e-12:
        raise ValueError("C must be Hermitian")
    if np.max(np.abs(f + f.T), initial=0.0) > 1e-12:
        raise ValueError("F must be antisymmetric")

    m = c.shape[0]
    eye = np.eye(m)
    gamma = np.zeros((2 * m, 2 * m))
    gamma[:m, :m] = -2.0 * c.imag - 2.0 * f.imag
    gamma[:m, m:] = 2.0 * f.real - 2.0 * c.real + eye
    gamma[m:, :m] = 2.0 * c.real - eye + 2.0 * f.real
    gamma[m:, m:] = 2.0 * f.imag - 2.0 * c.imag
    return 0.5 * (gamma - gamma.T)


def occupations(gamma: GammaLike) -> NDArray[np.float64]:
    """Mode occupations n_a = (1 − Γ_{a,a+M}) / 2."""
    g = gamma_array(gamma)
    m = g.shape[0] // 2
    return 0.5 * (1.0 - np.diag(g[:m, m:]))


def density_correlation(gamma: GammaLike) -> NDArray[np.float64]:
    """Matrix ⟨n_a n_b⟩ over all complex modes.

    Off the diagonal ⟨n_a n_b⟩ = n_a n_b + |F_ab|² − |C_ab|²; on it ⟨n_a²⟩ = n_a.
    """
    c, f = complex_correlators(gamma)
    n = c.diagonal().real
    corr = np.outer(n, n) + np.abs(f) ** 2 - np.abs(c) ** 2
    np.fill_diagonal(corr, n)
    return corr


def pairing(gamma: GammaLike) -> float:
    """Basis-independent pairing measure P = (2/M) Σ_kl |⟨a†_k a†_l⟩|²."""
    _, f = complex_correlators(gamma)
    return float(2.0 / f.shape[0] * np.sum(np.abs(f) ** 2))


def pairing_per_particle(gamma: GammaLike) -> float:
    """P / N; zero for the empty state."""
    n = particle_number(gamma)
    if n <= 1e-12:
        return 0.0
    return pairing(gamma) / n


def _check_lattice(gamma: NDArray, lattice: Lattice) -> None:
    if gamma.shape[0] != 2 * lattice.n_modes:
        raise ValueError(
            f"Γ of dimension {gamma.shape[0]} does not match a lattice with "
            f"{lattice.n_modes} modes"
        )


def site_densities(gamma: GammaLike, lattice: Lattice) -> NDArray[np.float64]:
    """n_x = n_{x↑} + n_{x↓} in site order."""
    g = gamma_array(gamma)
    _check_lattice(g, lattice)
    n = occupations(g)
    return n[: lattice.n_sites] + n[lattice.n_sites :]


def density_profile(gamma: GammaLike, lattice: Lattice) -> NDArray[np.float64]:
    """Local densities n_x ∈ [0, 2] as an (n_v, n_h) field."""
    return site_densities(gamma, lattice).reshape(lattice.n_v, lattice.n_h)


def center_density(gamma: GammaLike, lattice: Lattice) -> float:
    """Density averaged over the sites at the lattice centre."""
    return float(np.mean(site_densities(gamma, lattice)[lattice.center_sites()]))


def _as_displacement(displacement: Displacement, lattice: Lattice) -> Tuple[int, int]:
    if isinstance(displacement, (int, np.integer)):
        dx, dy = int(displacement), 0
    else:
        dx, dy = (int(v) for v in displacement)
    if abs(dx) >= lattice.n_h or abs(dy) >= lattice.n_v:
        raise ValueError(f"Displacement {(dx, dy)} outside a {lattice.n_h}x{lattice.n_v} lattice")
    return dx, dy


def _site_pairs(lattice: Lattice, dx: int, dy: int) -> Tuple[NDArray[np.int_], NDArray[np.int_]]:
    """(x, x + y) for every site whose displaced partner lies on the lattice."""
    origin = np.arange(lattice.n_sites)
    shifted = np.array([lattice.shift(s, dx, dy) for s in origin])
    inside = shifted >= 0
    return origin[inside], shifted[inside]


def spin_correlation(gamma: GammaLike, lattice: Lattice, displacement: Displacement = 0) -> float:
    """Site-averaged C(y) = ⟨(n_{x+y↑} − n_{x+y↓})(n_{x↑} − n_{x↓})⟩.

    On open lattices the average runs over the sites whose partner x + y exists.

    Raises:
        ValueError: If the displacement does not fit on the lattice
    """
    g = gamma_array(gamma)
    _check_lattice(g, lattice)
    dx, dy = _as_displacement(displacement, lattice)
    corr = density_correlation(g)
    x, y = _site_pairs(lattice, dx, dy)
    n = lattice.n_sites
    values = corr[y, x] - corr[y, x + n] - corr[y + n, x] + corr[y + n, x + n]
    return float(np.mean(values))


def spin_correlation_map(gamma: GammaLike, lattice: Lattice) -> NDArray[np.float64]:
    """C(y) for every displacement 0 ≤ dx < n_h, 0 ≤ dy < n_v as an (n_v, n_h) field."""
    out = np.zeros((lattice.n_v, lattice.n_h))
    for dy in range(lattice.n_v):
        for dx in range(lattice.n_h):
            out[dy, dx] = spin_correlation(gamma, lattice, (dx, dy))
    return out


def af_order(gamma: GammaLike, lattice: Lattice, displacement: Displacement = 1) -> float:
    """Site-averaged A(d) = ⟨n_{x↑} n_{x+d,↓}⟩; an integer d is a horizontal distance.

    Raises:
        ValueError: If the displacement does not fit on the lattice
    """
    g = gamma_array(gamma)
    _check_lattice(g, lattice)
    dx, dy = _as_displacement(displacement, lattice)
    corr = density_correlation(g)
    x, y = _site_pairs(lattice, dx, dy)
    return float(np.mean(corr[x, y + lattice.n_sites]))


def mott_order(gamma: GammaLike, lattice: Lattice) -> float:
    """Site-averaged on-site charge fluctuation O_M = ⟨n_x²⟩ − ⟨n_x⟩²."""
    g = gamma_array(gamma)
    _check_lattice(g, lattice)
    corr = density_correlation(g)
    n = lattice.n_sites
    sites = np.arange(n)
    up, down = occupations(g)[:n], occupations(g)[n:]
    second = up + down + 2.0 * corr[sites, sites + n]
    return float(np.mean(second - (up + down) ** 2))
