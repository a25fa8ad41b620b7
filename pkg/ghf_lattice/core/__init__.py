"""Core algebra of fermionic Gaussian states."""

from ghf_lattice.core.covariance import (
    CovarianceMatrix,
    entropy,
    gamma_array,
    is_physical,
    is_pure,
    product_state_cm,
    purity_error,
    random_mixed_cm,
    random_pure_cm,
    random_slater_cm,
    tanh_gibbs,
    vacuum_cm,
)
from ghf_lattice.core.interfaces import HamiltonianSource
from ghf_lattice.core.linalg import (
    cm_log_term,
    orthogonal_exp,
    pfaffian,
    purify,
    sign_cm,
)
from ghf_lattice.core.wick import majorana_moment, wick_2p, wick_four

__all__ = [
    "CovarianceMatrix",
    "HamiltonianSource",
    "cm_log_term",
    "entropy",
    "gamma_array",
    "is_physical",
    "is_pure",
    "majorana_moment",
    "orthogonal_exp",
    "pfaffian",
    "product_state_cm",
    "purify",
    "purity_error",
    "random_mixed_cm",
    "random_pure_cm",
    "random_slater_cm",
    "sign_cm",
    "tanh_gibbs",
    "vacuum_cm",
    "wick_2p",
    "wick_four",
]
