"""Self-consistent Gibbs states and β-annealing."""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm

from ghf_lattice.config.solvers import (
    BETA_STEP,
    LOG_CLIP_EPS,
    PHYSICALITY_TOL,
    THERMAL_DAMPING,
    THERMAL_MAX_ITERS,
    THERMAL_MIN_DAMPING,
    THERMAL_TOL,
)
from ghf_lattice.core.covariance import (
    CovarianceMatrix,
    GammaLike,
    entropy,
    gamma_array,
    singular_values,
)
from ghf_lattice.core.linalg import commutator, gibbs_spectrum, skew_eigh
from ghf_lattice.model.hamiltonian import MajoranaHamiltonian, energy, mean_field
from ghf_lattice.validation.validators import require_modes, validate_covariance


class ThermalOptions(BaseModel):
    """Damping and convergence settings of the Gibbs fixed-point iteration."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    damping: float = Field(THERMAL_DAMPING, gt=0, le=1, description="Mixing weight α")
    fixed_point_tol: float = Field(
        THERMAL_TOL, gt=0, description="Tolerance on ‖Γ_{n+1} − Γ_n‖_F / 2M"
    )
    max_iters: int = Field(THERMAL_MAX_ITERS, ge=1, description="Cap on fixed-point updates")
    beta_step: float = Field(BETA_STEP, gt=0, description="Δβ between annealing points")


@dataclass
class ThermalResult:
    """
    Outcome of a Gibbs fixed-point solve at one inverse temperature.

    Attributes:
        gamma: Self-consistent covariance matrix i·tanh(2iβh̄(Γ))
        beta: Inverse temperature
        energy: E(Γ)
        entropy: S(Γ) in nats
        free_energy: energy − entropy / beta
        iters: Number of damped updates applied
        converged: Whether the fixed-point tolerance was reached
        commutator_residual: ‖[h_F(Γ), Γ]‖_F with h_F = h̄ − cm_log_term(Γ)/β
        stationarity_residual: ‖h_F(Γ)‖_F over the non-saturated spectrum of iΓ
        damping: Damping in effect when the iteration stopped
    """

    gamma: CovarianceMatrix
    beta: float
    energy: float
    entropy: float
    free_energy: float
    iters: int
    converged: bool
    commutator_residual: float
    stationarity_residual: float
    damping: float

    def __str__(self) -> str:
        mark = "✓" if self.converged else "✗"
        return (
            f"{mark} β={self.beta:.4f}: F={self.free_energy:.10f} E={self.energy:.10f} "
            f"S={self.entropy:.6f} ({self.iters} iterations)"
        )


class AnnealAborted(RuntimeError):
    """Raised when an annealing point fails to converge; carries the converged prefix."""

    def __init__(self, message: str, results: List[ThermalResult]):
        super().__init__(message)
        self.results = results


def free_energy(hamiltonian: MajoranaHamiltonian, gamma: GammaLike, beta: float) -> float:
    """F = E(Γ) − S(Γ)/β.

    Raises:
        ValueError: If beta is not positive or Γ is not physical
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    return energy(hamiltonian, gamma) - entropy(gamma) / beta


def free_energy_residuals(
    hamiltonian: MajoranaHamiltonian, gamma: GammaLike, beta: float
) -> Tuple[float, float]:
    """Residual pair of the free-energy stationarity conditions.

    With h_F = h̄(Γ) − cm_log_term(Γ)/β a stationary point has [h_F, Γ] = 0 and h_F = 0.
    Because the logarithm commutes with Γ the first residual is ‖[h̄, Γ]‖_F. The second is
    evaluated in the eigenbasis of iΓ, leaving out directions where |λ| is within
    LOG_CLIP_EPS of 1 (the logarithm carries no information there).

    Returns:
        (commutator residual, stationarity residual)
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    g = gamma_array(gamma)
    hbar = mean_field(hamiltonian, g)
    comm = float(np.linalg.norm(commutator(hbar, g)))

    values, vectors = skew_eigh(g)
    keep = np.abs(values) < 1.0 - LOG_CLIP_EPS
    if not np.any(keep):
        return comm, 0.0
    # i·h_F in the eigenbasis of iΓ: V†(i h̄)V + diag(artanh λ) / 2β
    rotated = vectors[:, keep].conj().T @ (1j * hbar) @ vectors[:, keep]
    rotated[np.diag_indices_from(rotated)] += np.arctanh(values[keep]) / (2.0 * beta)
    return comm, float(np.linalg.norm(rotated))


def _is_oscillating(history: List[float]) -> bool:
    # Period-2 pattern: the residual goes up, down, up without net progress
    if len(history) < 4:
        return False
    r0, r1, r2, r3 = history[-4:]
    return r1 > r0 and r2 < r1 and r3 > r2 and r3 >= r1 * 0.999


def gibbs_fixed_point(
    hamiltonian: MajoranaHamiltonian,
    beta: float,
    gamma0: Optional[GammaLike] = None,
    opts: Optional[ThermalOptions] = None,
) -> ThermalResult:
    """Solve Γ = i·tanh(2iβh̄(Γ)) by damped fixed-point iteration.

    Each update is Γ ← (1 − α)Γ + α·tanh_gibbs(h̄(Γ), β). Convergence is measured on the
    undamped step ‖tanh_gibbs(h̄(Γ_n), β) − Γ_n‖_F / 2M and the returned state is the last
    undamped image. α is halved on a period-2 residual oscillation; for a quadratic
    Hamiltonian the map is constant and α = 1 is used.

    Args:
        hamiltonian: Majorana Hamiltonian
        beta: Inverse temperature (> 0)
        gamma0: Physical starting point; defaults to the maximally mixed state
        opts: Iteration options

    Returns:
        ThermalResult; ``converged`` is False when max_iters ran out

    Raises:
        ValueError: If beta is not positive or gamma0 has the wrong dimension
        CovarianceValidationError: If gamma0 is not physical
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    opts = opts or ThermalOptions()
    dim = hamiltonian.dim
    if gamma0 is None:
        g = np.zeros((dim, dim))
    else:
        g = np.array(gamma_array(gamma0))
        require_modes(g, hamiltonian.modes, "thermal start")
        validate_covariance(g, context="thermal start")

    alpha = 1.0 if hamiltonian.is_quadratic else opts.damping
    # Largest singular value of the iterate, bounded through the convex updates
    sigma = float(np.max(singular_values(g)))
    history: List[float] = []
    iters = 0
    converged = False

    while True:
        target, target_sigma = gibbs_spectrum(mean_field(hamiltonian, g), beta)
        step = float(np.linalg.norm(target - g) / dim)
        history.append(step)
        if step <= opts.fixed_point_tol:
            converged = True
            g, sigma = target, target_sigma
            break
        if iters >= opts.max_iters:
            break

        if _is_oscillating(history) and alpha > THERMAL_MIN_DAMPING:
            alpha = max(0.5 * alpha, THERMAL_MIN_DAMPING)
            history.clear()
            logger.debug(f"Residual oscillates at β={beta}; damping -> {alpha:.4g}")

        g = (1.0 - alpha) * g + alpha * target
        sigma = (1.0 - alpha) * sigma + alpha * target_sigma
        if sigma > 1.0 + PHYSICALITY_TOL:
            validate_covariance(g, context=f"thermal iterate {iters}")
        iters += 1

    e = energy(hamiltonian, g)
    s = entropy(g)
    comm, stat = free_energy_residuals(hamiltonian, g, beta)
    result = ThermalResult(
        gamma=CovarianceMatrix(g),
        beta=float(beta),
        energy=e,
        entropy=s,
        free_energy=e - s / beta,
        iters=iters,
        converged=converged,
        commutator_residual=comm,
        stationarity_residual=stat,
        damping=alpha,
    )

    if converged:
        logger.debug(str(result))
    else:
        logger.warning(
            f"Gibbs iteration at β={beta} not converged after {iters} updates "
            f"(last step {history[-1]:.2e}); reduce the damping"
        )
    return result


def beta_grid(beta_start: float, beta_end: float, beta_step: float) -> np.ndarray:
    """Equally spaced β values from start to end with spacing at most ``beta_step``."""
    if beta_step <= 0:
        raise ValueError(f"beta_step must be positive, got {beta_step}")
    span = abs(beta_end - beta_start)
    n = max(1, int(np.ceil(span / beta_step - 1e-9)))
    return np.linspace(beta_start, beta_end, n + 1)


def anneal(
    hamiltonian: MajoranaHamiltonian,
    beta_start: float,
    beta_end: float,
    opts: Optional[ThermalOptions] = None,
    gamma0: Optional[GammaLike] = None,
    progress: bool = True,
) -> List[ThermalResult]:
    """Sweep β in steps of ``opts.beta_step``, seeding each solve with the previous state.

    Runs in either direction: warming from a ground state (β decreasing) or cooling from
    high temperature (β increasing). Points with β ≤ 0 are skipped. A jump
    ‖ΔΓ‖_F > 10·Δβ·‖Γ‖_F between neighbouring points is logged as a branch switch.

    Args:
        hamiltonian: Majorana Hamiltonian
        beta_start: First inverse temperature
        beta_end: Last inverse temperature
        opts: Iteration options (beta_step sets the grid)
        gamma0: Seed for the first point; maximally mixed if omitted
        progress: Show a tqdm progress bar

    Returns:
        One converged ThermalResult per grid point

    Raises:
        AnnealAborted: If any point fails to converge; ``results`` holds the converged prefix
    """
    opts = opts or ThermalOptions()
    betas = [b for b in beta_grid(beta_start, beta_end, opts.beta_step) if b > 0]
    if not betas:
        raise ValueError(f"No positive β in [{beta_start}, {beta_end}]")

    logger.info(
        f"Annealing β {beta_start} → {beta_end} over {len(betas)} points "
        f"(Δβ={opts.beta_step}, α={opts.damping})"
    )
    results: List[ThermalResult] = []
    seed = gamma0
    previous_beta = None

    for beta in tqdm(betas, desc="Annealing", disable=not progress, leave=False):
        result = gibbs_fixed_point(hamiltonian, beta, seed, opts)
        if not result.converged:
            raise AnnealAborted(f"Gibbs iteration did not converge at β={beta:.6g}", results)

        if results:
            g_new, g_old = result.gamma.gamma, results[-1].gamma.gamma
            jump = float(np.linalg.norm(g_new - g_old))
            limit = 10.0 * abs(beta - previous_beta) * float(np.linalg.norm(g_new))
            if jump > limit:
                logger.warning(
                    f"Discontinuity between β={previous_beta:.6g} and β={beta:.6g}: "
                    f"‖ΔΓ‖={jump:.3e} > {limit:.3e} (possible branch switch)"
                )

        results.append(result)
        seed = result.gamma
        previous_beta = beta

    logger.success(f"Anneal finished at β={results[-1].beta:.6g}")
    return results
