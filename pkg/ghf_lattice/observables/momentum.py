"""Momentum-resolved observables on the lattice momentum grid."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from ghf_lattice.config.solvers import PHYSICALITY_TOL
from ghf_lattice.core.covariance import GammaLike, gamma_array, purity_error
from ghf_lattice.model.lattice import Lattice
from ghf_lattice.observables.correlators import complex_correlators, spin_correlation_map

SATURATION_TOL = 1e-10


def _plane_waves(lattice: Lattice) -> NDArray[np.complex128]:
    """E_kx = exp(i k·r_x) with k and x both in site order."""
    return np.exp(1j * lattice.momenta() @ lattice.coordinates().T)


def _require_periodic(lattice: Lattice, what: str) -> None:
    if not lattice.periodic:
        raise ValueError(
            f"{what} needs a periodic lattice; momentum is ill-defined with open edges"
        )


def _momentum_block(block: NDArray, lattice: Lattice) -> NDArray[np.complex128]:
    """(1/N) Σ_xy e^{ik·x} e^{−ik·y} B_xy for every k."""
    waves = _plane_waves(lattice)
    return np.einsum("kx,xy,ky->k", waves, block, waves.conj()) / lattice.n_sites


def momentum_distribution(
    gamma: GammaLike, lattice: Lattice, spin: int = 0
) -> NDArray[np.float64]:
    """n(k) = (1/N) Σ_xy e^{ik·(x−y)} ⟨a†_x a_y⟩ for one spin, as an (n_v, n_h) field.

    Entry [m_v, m_h] belongs to k = 2π(m_h/n_h, m_v/n_v).

    Raises:
        ValueError: On an open lattice or for a spin other than 0 or 1
    """
    _require_periodic(lattice, "Momentum distribution")
    if spin not in (0, 1):
        raise ValueError(f"spin must be 0 (up) or 1 (down), got {spin}")
    g = gamma_array(gamma)
    c, _ = complex_correlators(g)
    n = lattice.n_sites
    block = c[spin * n : (spin + 1) * n, spin * n : (spin + 1) * n]
    values = _momentum_block(block, lattice)
    return values.real.reshape(lattice.n_v, lattice.n_h)


@dataclass
class StructureFactor:
    """S(k) on the momentum grid with the location of its maximum."""

    values: NDArray[np.float64]
    peak: Tuple[float, float]

    @property
    def peak_value(self) -> float:
        return float(self.values.max())


def magnetic_structure_factor(gamma: GammaLike, lattice: Lattice) -> StructureFactor:
    """S(k) = Σ_y e^{ik·y} C(y) over all displacements of a periodic lattice.

    Raises:
        ValueError: On an open lattice
    """
    _require_periodic(lattice, "Magnetic structure factor")
    corr = spin_correlation_map(gamma, lattice).reshape(-1)
    # Displacements (dx, dy) enumerate exactly like sites
    values = (_plane_waves(lattice) @ corr).real.reshape(lattice.n_v, lattice.n_h)
    m_v, m_h = np.unravel_index(int(np.argmax(values)), values.shape)
    peak = (2.0 * np.pi * m_h / lattice.n_h, 2.0 * np.pi * m_v / lattice.n_v)
    return StructureFactor(values=values, peak=peak)


@dataclass
class PairAmplitude:
    """
    Cooper-pair wave function φ(k) = F(k) / (1 − n↑(k)) on the momentum grid.

    Attributes:
        phi: Complex φ(k) as an (n_v, n_h) field; zero where saturated
        saturated: True where 1 − n↑(k) < 1e-10 and φ is undefined
        translation_invariant: False for open lattices, where the plane-wave basis is only
            an approximate momentum basis
    """

    phi: NDArray[np.complex128]
    saturated: NDArray[np.bool_]
    translation_invariant: bool

    @property
    def values(self) -> NDArray[np.float64]:
        """|φ(k)|²."""
        return np.abs(self.phi) ** 2


def pair_amplitude(gamma: GammaLike, lattice: Lattice) -> PairAmplitude:
    """Pair wave function of a pure state from F(k) = ⟨a†_{k↑} a†_{−k↓}⟩ and n↑(k).

    Raises:
        ValueError: If Γ is not pure
    """
    g = gamma_array(gamma)
    if purity_error(g) > PHYSICALITY_TOL:
        raise ValueError("Pair amplitude is only defined for pure states")
    c, f = complex_correlators(g)
    n = lattice.n_sites
    anomalous = _momentum_block(f[:n, n:], lattice)
    occupied = _momentum_block(c[:n, :n], lattice).real

    hole = 1.0 - occupied
    saturated = hole < SATURATION_TOL
    phi = np.zeros(n, dtype=complex)
    phi[~saturated] = anomalous[~saturated] / hole[~saturated]
    return PairAmplitude(
        phi=phi.reshape(lattice.n_v, lattice.n_h),
        saturated=saturated.reshape(lattice.n_v, lattice.n_h),
        translation_invariant=lattice.periodic,
    )
