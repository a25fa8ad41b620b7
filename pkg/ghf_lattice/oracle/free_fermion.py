"""Closed-form ground and Gibbs states of quadratic Hamiltonians."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from ghf_lattice.config.solvers import ZERO_MODE_TOL
from ghf_lattice.core.covariance import CovarianceMatrix
from ghf_lattice.core.linalg import check_skew, gibbs_spectrum, sign_cm, skew_eigh


@dataclass
class FreeFermionReference:
    """Exact state and thermodynamics of H = i Σ T_kl c_k c_l + e0.

    At zero temperature ``free_energy`` equals ``energy`` and ``entropy`` counts the zero
    modes, which are left maximally mixed.
    """

    gamma: CovarianceMatrix
    energy: float
    entropy: float
    free_energy: float
    beta: Optional[float] = None


def free_fermion_reference(
    t: ArrayLike, beta: Optional[float] = None, e0: float = 0.0
) -> FreeFermionReference:
    """Ground state (``beta`` None) or Gibbs state of a quadratic Majorana Hamiltonian.

    With ±μ_j the spectrum of iT: E₀ = −Σ|μ|, E(β) = −Σ|μ|tanh(2β|μ|) and
    F(β) = −β⁻¹ Σ_{μ_j > 0} ln(2cosh 2βμ_j), each plus e0.

    Raises:
        ValueError: If T is not antisymmetric or beta is not positive
    """
    tt = check_skew(t, "T")
    mu = skew_eigh(tt)[0]
    modes = tt.shape[0] // 2
    positive = np.abs(mu[modes:])

    if beta is None:
        gamma = sign_cm(tt)
        energy = -float(np.sum(np.abs(mu))) + e0
        zero_modes = int(np.sum(positive <= ZERO_MODE_TOL * max(1.0, positive.max(initial=0.0))))
        entropy = zero_modes * np.log(2.0)
        return FreeFermionReference(
            gamma=CovarianceMatrix(gamma), energy=energy, entropy=entropy, free_energy=energy
        )

    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    gamma, _ = gibbs_spectrum(tt, beta)
    energy = -float(np.sum(np.abs(mu) * np.tanh(2.0 * beta * np.abs(mu)))) + e0
    free = -float(np.sum(np.logaddexp(2.0 * beta * positive, -2.0 * beta * positive))) / beta + e0
    return FreeFermionReference(
        gamma=CovarianceMatrix(gamma),
        energy=energy,
        entropy=beta * (energy - free),
        free_energy=free,
        beta=float(beta),
    )
