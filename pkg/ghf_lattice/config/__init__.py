"""Configuration module for the generalized Hartree-Fock engine."""

from ghf_lattice.config.paths import CONFIGS_DIR, PROJ_ROOT, RUNS_DIR
from ghf_lattice.config.settings import LOG_FORMAT, LOG_LEVEL, MAX_WORKERS
from ghf_lattice.config.solvers import (
    ANTISYMMETRY_TOL,
    BETA_STEP,
    DENSITY_MAX_MODES,
    DYNAMICS_DT,
    ED_DENSE_MAX_MODES,
    FOCK_MAX_MODES,
    GROUND_DTAU,
    GROUND_GROWTH,
    GROUND_GROWTH_AFTER,
    GROUND_MAX_DTAU_FACTOR,
    GROUND_MAX_STEPS,
    GROUND_REORTHOGONALIZE_EVERY,
    GROUND_RESIDUAL_TOL,
    LOG_CLIP_EPS,
    PHYSICALITY_TOL,
    RATE_CHECK_MAX_MODES,
    SNAPSHOT_STRIDE,
    THERMAL_DAMPING,
    THERMAL_MAX_ITERS,
    THERMAL_MIN_DAMPING,
    THERMAL_TOL,
    ZERO_MODE_TOL,
)

__all__ = [
    # Paths
    "PROJ_ROOT",
    "CONFIGS_DIR",
    "RUNS_DIR",
    # Settings
    "LOG_LEVEL",
    "LOG_FORMAT",
    "MAX_WORKERS",
    # Tolerances
    "ANTISYMMETRY_TOL",
    "PHYSICALITY_TOL",
    "LOG_CLIP_EPS",
    "ZERO_MODE_TOL",
    # Ground solver
    "GROUND_DTAU",
    "GROUND_RESIDUAL_TOL",
    "GROUND_MAX_STEPS",
    "GROUND_REORTHOGONALIZE_EVERY",
    "GROUND_MAX_DTAU_FACTOR",
    "GROUND_GROWTH",
    "GROUND_GROWTH_AFTER",
    # Thermal solver
    "THERMAL_DAMPING",
    "THERMAL_TOL",
    "THERMAL_MAX_ITERS",
    "THERMAL_MIN_DAMPING",
    "BETA_STEP",
    # Dynamics
    "DYNAMICS_DT",
    "SNAPSHOT_STRIDE",
    # Oracles
    "FOCK_MAX_MODES",
    "DENSITY_MAX_MODES",
    "RATE_CHECK_MAX_MODES",
    "ED_DENSE_MAX_MODES",
]
