"""Ground-state, thermal and real-time solvers acting on covariance matrices."""

from ghf_lattice.solvers.dynamics import (
    LinearRampSource,
    RampProtocol,
    StaticHamiltonian,
    Trajectory,
    evolve,
    ramp_interaction,
    ramp_trap,
    run_ramp,
)
from ghf_lattice.solvers.ground import GroundOptions, GroundResult, minimize_energy, residual
from ghf_lattice.solvers.thermal import (
    AnnealAborted,
    ThermalOptions,
    ThermalResult,
    anneal,
    beta_grid,
    free_energy,
    free_energy_residuals,
    gibbs_fixed_point,
)

__all__ = [
    "AnnealAborted",
    "GroundOptions",
    "GroundResult",
    "LinearRampSource",
    "RampProtocol",
    "StaticHamiltonian",
    "ThermalOptions",
    "ThermalResult",
    "Trajectory",
    "anneal",
    "beta_grid",
    "evolve",
    "free_energy",
    "free_energy_residuals",
    "gibbs_fixed_point",
    "minimize_energy",
    "ramp_interaction",
    "ramp_trap",
    "residual",
    "run_ramp",
]
