"""Utility modules for the generalized Hartree-Fock engine."""

from ghf_lattice.utils.logging import setup_logger

__all__ = ["setup_logger"]
