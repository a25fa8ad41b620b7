"""Imaginary-time ground-state flow of the covariance matrix."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from loguru import logger
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from ghf_lattice.config.solvers import (
    GROUND_DTAU,
    GROUND_GROWTH,
    GROUND_GROWTH_AFTER,
    GROUND_MAX_DTAU_FACTOR,
    GROUND_MAX_STEPS,
    GROUND_REORTHOGONALIZE_EVERY,
    GROUND_RESIDUAL_TOL,
    PHYSICALITY_TOL,
)
from ghf_lattice.core.covariance import (
    CovarianceMatrix,
    GammaLike,
    gamma_array,
    purity_error,
)
from ghf_lattice.core.linalg import commutator, orthogonal_exp, purify
from ghf_lattice.model.hamiltonian import MajoranaHamiltonian, energy, mean_field
from ghf_lattice.validation.validators import require_modes, validate_covariance


class GroundOptions(BaseModel):
    """Step-size and convergence settings of the imaginary-time flow."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    dtau: float = Field(GROUND_DTAU, gt=0, description="Initial imaginary-time step")
    residual_tol: float = Field(
        GROUND_RESIDUAL_TOL, gt=0, description="Tolerance on ‖[h̄,Γ]‖_F / max(1, ‖h̄‖_F)"
    )
    max_steps: int = Field(GROUND_MAX_STEPS, ge=1, description="Cap on accepted steps")
    reorthogonalize_every: int = Field(
        GROUND_REORTHOGONALIZE_EVERY, ge=1, description="Accepted steps between purifications"
    )


@dataclass
class GroundResult:
    """
    Outcome of an imaginary-time flow.

    Attributes:
        gamma: Final pure covariance matrix
        energy: E(Γ) including the offset e0
        residual: Relative stationarity residual ‖[h̄,Γ]‖_F / max(1, ‖h̄‖_F)
        steps: Accepted steps
        rejections: Backtracked steps, not counted against max_steps
        energy_history: Energy after every accepted step (first entry is E(Γ0))
        converged: Whether residual ≤ residual_tol was reached
        purity_error: ‖Γ² + 𝟙‖_F / 2M of the final state
    """

    gamma: CovarianceMatrix
    energy: float
    residual: float
    steps: int
    rejections: int
    energy_history: NDArray[np.float64] = field(repr=False)
    converged: bool
    purity_error: float

    def __str__(self) -> str:
        mark = "✓" if self.converged else "✗"
        return (
            f"{mark} Ground state E={self.energy:.12f} residual={self.residual:.2e} "
            f"after {self.steps} steps ({self.rejections} rejected)"
        )


def _relative_residual(hbar: NDArray, gamma: NDArray) -> float:
    return float(np.linalg.norm(commutator(hbar, gamma)) / max(1.0, np.linalg.norm(hbar)))


def residual(hamiltonian: MajoranaHamiltonian, gamma: GammaLike) -> float:
    """Stationarity residual ‖[h̄(Γ), Γ]‖_F / max(1, ‖h̄(Γ)‖_F)."""
    g = gamma_array(gamma)
    return _relative_residual(mean_field(hamiltonian, g), g)


def _energy_slack(value: float) -> float:
    # Roundoff allowance when comparing energies of neighbouring steps
    return min(1e-10, 1e-12 * max(1.0, abs(value)))


def minimize_energy(
    hamiltonian: MajoranaHamiltonian,
    gamma0: GammaLike,
    opts: Optional[GroundOptions] = None,
) -> GroundResult:
    """Minimize the energy over pure Gaussian states by imaginary-time flow.

    Each step applies Γ ← OΓOᵀ with O = exp(Δτ·A) and A = 2[h̄(Γ), Γ], which keeps Γ pure.
    A step that raises the energy is rejected and Δτ halved; after GROUND_GROWTH_AFTER
    consecutive accepted steps Δτ grows by GROUND_GROWTH, capped at
    GROUND_MAX_DTAU_FACTOR·dtau.

    Args:
        hamiltonian: Majorana Hamiltonian
        gamma0: Pure initial covariance matrix
        opts: Flow options

    Returns:
        GroundResult; ``converged`` is False if max_steps ran out or the step size collapsed

    Raises:
        ValueError: If gamma0 is not pure or has the wrong dimension
    """
    opts = opts or GroundOptions()
    g = np.array(gamma_array(gamma0))
    require_modes(g, hamiltonian.modes, "initial state")
    if purity_error(g) > PHYSICALITY_TOL:
        raise ValueError("Initial state for minimize_energy must be pure (Γ² = −𝟙)")

    hbar = mean_field(hamiltonian, g)
    e = energy(hamiltonian, g, hbar)
    history = [e]
    res = _relative_residual(hbar, g)

    dtau = opts.dtau
    max_dtau = GROUND_MAX_DTAU_FACTOR * opts.dtau
    min_dtau = 1e-12 * opts.dtau
    streak = 0
    accepted = 0
    rejected = 0

    logger.info(f"Imaginary-time flow on M={hamiltonian.modes}: E0={e:.10f}, residual={res:.2e}")

    while res > opts.residual_tol and accepted < opts.max_steps:
        o = orthogonal_exp(dtau * 2.0 * commutator(hbar, g))
        trial = o @ g @ o.T
        trial = 0.5 * (trial - trial.T)
        trial_hbar = mean_field(hamiltonian, trial)
        trial_e = energy(hamiltonian, trial, trial_hbar)

        # Compare with the last recorded energy so the history stays monotone across purify
        if trial_e > history[-1] + _energy_slack(history[-1]):
            dtau *= 0.5
            streak = 0
            rejected += 1
            logger.debug(f"Energy rose by {trial_e - history[-1]:.2e}; dtau -> {dtau:.3e}")
            if dtau < min_dtau:
                logger.warning("Step size collapsed before reaching the residual tolerance")
                break
            continue

        g, hbar, e = trial, trial_hbar, trial_e
        accepted += 1
        history.append(e)

        if accepted % opts.reorthogonalize_every == 0:
            g = purify(g)
            hbar = mean_field(hamiltonian, g)
            e = energy(hamiltonian, g, hbar)

        res = _relative_residual(hbar, g)

        streak += 1
        if streak >= GROUND_GROWTH_AFTER:
            dtau = min(dtau * GROUND_GROWTH, max_dtau)
            streak = 0

    converged = res <= opts.residual_tol
    validate_covariance(g, context="ground state", require_pure=True)
    result = GroundResult(
        gamma=CovarianceMatrix(g),
        energy=e,
        residual=res,
        steps=accepted,
        rejections=rejected,
        energy_history=np.asarray(history),
        converged=converged,
        purity_error=purity_error(g),
    )

    if converged:
        logger.success(str(result))
    else:
        logger.warning(f"Imaginary-time flow did not converge: {result}")
    return result
