"""Validation of covariance matrices produced and consumed by the engine."""

from ghf_lattice.validation.validators import (
    CovarianceReport,
    CovarianceValidationError,
    inspect_covariance,
    require_modes,
    validate_covariance,
)

__all__ = [
    "CovarianceReport",
    "CovarianceValidationError",
    "inspect_covariance",
    "require_modes",
    "validate_covariance",
]
