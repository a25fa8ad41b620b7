"""Lattice models in Majorana form and the shared mean-field functionals."""

from ghf_lattice.model.hamiltonian import (
    MajoranaHamiltonian,
    energy,
    mean_field,
    number_generator,
    particle_number,
    quadratic_from_one_body,
)
from ghf_lattice.model.hubbard import ModelSpec, build_hubbard, one_body_matrix
from ghf_lattice.model.lattice import Lattice

__all__ = [
    "Lattice",
    "MajoranaHamiltonian",
    "ModelSpec",
    "build_hubbard",
    "energy",
    "mean_field",
    "number_generator",
    "one_body_matrix",
    "particle_number",
    "quadratic_from_one_body",
]
