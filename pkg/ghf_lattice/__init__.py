"""Generalized Hartree-Fock on Majorana covariance matrices for lattice fermions."""

from ghf_lattice import config  # noqa: F401

__version__ = "0.1.0"
