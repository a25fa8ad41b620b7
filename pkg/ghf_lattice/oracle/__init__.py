"""Independent small-system references: Fock space, Gaussian states, free fermions."""

from ghf_lattice.oracle.fock import (
    FockOperator,
    OracleSizeError,
    annihilators,
    anticommutator_errors,
    ed_ground,
    fock_hamiltonian,
    fock_hubbard,
    majorana_operators,
    number_operator,
)
from ghf_lattice.oracle.free_fermion import FreeFermionReference, free_fermion_reference
from ghf_lattice.oracle.gaussian import (
    fock_covariance,
    gaussian_density_operator,
    imaginary_time_rates,
    rate_check_imag,
    rate_check_real,
    real_time_rates,
)
from ghf_lattice.oracle.suite import CheckResult, SuiteReport, run_oracle_suite

__all__ = [
    "CheckResult",
    "FockOperator",
    "FreeFermionReference",
    "OracleSizeError",
    "SuiteReport",
    "annihilators",
    "anticommutator_errors",
    "ed_ground",
    "fock_covariance",
    "fock_hamiltonian",
    "fock_hubbard",
    "free_fermion_reference",
    "gaussian_density_operator",
    "imaginary_time_rates",
    "majorana_operators",
    "number_operator",
    "rate_check_imag",
    "rate_check_real",
    "real_time_rates",
    "run_oracle_suite",
]
