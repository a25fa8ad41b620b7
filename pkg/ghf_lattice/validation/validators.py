"""
Covariance-matrix validation helpers.

Every solver output and every checkpoint read goes through ``validate_covariance`` so that
antisymmetry, physicality and (where required) purity failures surface with a readable report
instead of silently propagating through later contractions.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike

from ghf_lattice.config.solvers import ANTISYMMETRY_TOL, PHYSICALITY_TOL


@dataclass
class CovarianceReport:
    """
    Results from checking a candidate covariance matrix.

    Attributes:
        success: Whether every requested check passed
        context: Where the matrix came from (e.g. "checkpoint", "ground state")
        modes: Number of complex modes M (0 if the shape check failed)
        antisymmetry_error: max |Γ + Γᵀ|
        max_singular_value: Largest singular value of Γ
        purity_error: ‖Γ² + 𝟙‖_F / 2M
        failed_checks: Names and details of the failed checks
    """

    success: bool
    context: str
    modes: int
    antisymmetry_error: float = float("nan")
    max_singular_value: float = float("nan")
    purity_error: float = float("nan")
    failed_checks: List[str] = field(default_factory=list)

    def __str__(self) -> str:
        """Human-readable summary of the checks."""
        if self.success:
            return f"✓ Covariance matrix valid ({self.context}, M={self.modes})"
        return (
            f"✗ Covariance matrix invalid ({self.context}, "
            f"{len(self.failed_checks)} checks failed)"
        )

    def get_failure_summary(self) -> str:
        """Get detailed summary of the failed checks."""
        if self.success:
            return "No failures"

        lines = [f"Covariance failures ({len(self.failed_checks)} checks):"]
        for i, failure in enumerate(self.failed_checks, 1):
            lines.append(f"  {i}. {failure}")
        return "\n".join(lines)


class CovarianceValidationError(ValueError):
    """Raised when a matrix is not a valid covariance matrix."""

    def __init__(self, message: str, report: CovarianceReport):
        super().__init__(message)
        self.report = report


def inspect_covariance(
    gamma: ArrayLike,
    context: str = "state",
    require_pure: bool = False,
    tol: float = PHYSICALITY_TOL,
    antisymmetry_tol: float = ANTISYMMETRY_TOL,
) -> CovarianceReport:
    """
    Run the shape, antisymmetry, physicality and optional purity checks.

    Args:
        gamma: Candidate 2M×2M real matrix
        context: Label used in messages
        require_pure: Also require Γ² = −𝟙
        tol: Tolerance for the physicality and purity checks
        antisymmetry_tol: Absolute tolerance on |Γ + Γᵀ|

    Returns:
        CovarianceReport describing every check
    """
    g = np.asarray(gamma)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2 or g.shape[0] == 0:
        return CovarianceReport(
            success=False,
            context=context,
            modes=0,
            failed_checks=[f"shape: expected square 2M×2M matrix, got {g.shape}"],
        )
    if np.iscomplexobj(g) or not np.all(np.isfinite(g)):
        return CovarianceReport(
            success=False,
            context=context,
            modes=g.shape[0] // 2,
            failed_checks=["entries: covariance matrices are real and finite"],
        )

    dim = g.shape[0]
    failed = []

    asym = float(np.max(np.abs(g + g.T)))
    if asym > antisymmetry_tol:
        failed.append(f"antisymmetry: max |Γ+Γᵀ| = {asym:.3e} > {antisymmetry_tol:.1e}")

    skew = 0.5 * (g - g.T)
    sigma = float(np.max(np.abs(np.linalg.eigvalsh(1j * skew))))
    if sigma > 1.0 + tol:
        failed.append(f"physicality: largest singular value {sigma:.12f} > 1 + {tol:.1e}")

    purity = float(np.linalg.norm(skew @ skew + np.eye(dim)) / dim)
    if require_pure and purity > tol:
        failed.append(f"purity: ‖Γ²+𝟙‖_F/2M = {purity:.3e} > {tol:.1e}")

    return CovarianceReport(
        success=not failed,
        context=context,
        modes=dim // 2,
        antisymmetry_error=asym,
        max_singular_value=sigma,
        purity_error=purity,
        failed_checks=failed,
    )


def validate_covariance(
    gamma: ArrayLike,
    context: str = "state",
    require_pure: bool = False,
    tol: float = PHYSICALITY_TOL,
    antisymmetry_tol: float = ANTISYMMETRY_TOL,
    fail_on_error: bool = True,
) -> CovarianceReport:
    """
    Validate a covariance matrix and log the outcome of failed checks.

    Args:
        gamma: Candidate covariance matrix
        context: Label used in messages
        require_pure: Also require Γ² = −𝟙
        tol: Tolerance for physicality and purity
        antisymmetry_tol: Absolute tolerance on |Γ + Γᵀ|
        fail_on_error: Whether to raise CovarianceValidationError on failure

    Returns:
        CovarianceReport with the check details

    Raises:
        CovarianceValidationError: If a check fails and fail_on_error=True
    """
    report = inspect_covariance(
        gamma,
        context=context,
        require_pure=require_pure,
        tol=tol,
        antisymmetry_tol=antisymmetry_tol,
    )

    if not report.success:
        logger.error(str(report))
        logger.error(report.get_failure_summary())
        if fail_on_error:
            raise CovarianceValidationError(f"Invalid covariance matrix: {report}", report=report)

    return report


def require_modes(gamma: ArrayLike, modes: int, context: Optional[str] = None) -> None:
    """Raise ValueError unless ``gamma`` is a 2M×2M matrix for the given M."""
    shape = np.shape(gamma)
    if shape != (2 * modes, 2 * modes):
        where = f" ({context})" if context else ""
        raise ValueError(
            f"Dimension mismatch{where}: expected {2 * modes}×{2 * modes}, got {shape}"
        )
