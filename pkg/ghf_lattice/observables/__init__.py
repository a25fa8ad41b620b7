"""Observables of Gaussian states on the Hubbard lattice."""

from ghf_lattice.observables.correlators import (
    af_order,
    center_density,
    cm_from_correlators,
    complex_correlators,
    density_correlation,
    density_profile,
    mott_order,
    occupations,
    pairing,
    pairing_per_particle,
    site_densities,
    spin_correlation,
    spin_correlation_map,
)
from ghf_lattice.observables.critical import CriticalFit, fit_critical_exponent
from ghf_lattice.observables.momentum import (
    PairAmplitude,
    StructureFactor,
    magnetic_structure_factor,
    momentum_distribution,
    pair_amplitude,
)
from ghf_lattice.observables.records import (
    FIELD_OBSERVABLES,
    SCALAR_OBSERVABLES,
    ObservableRecord,
    known_observables,
    measure,
)

__all__ = [
    "CriticalFit",
    "FIELD_OBSERVABLES",
    "ObservableRecord",
    "PairAmplitude",
    "SCALAR_OBSERVABLES",
    "StructureFactor",
    "af_order",
    "center_density",
    "cm_from_correlators",
    "complex_correlators",
    "density_correlation",
    "density_profile",
    "fit_critical_exponent",
    "known_observables",
    "magnetic_structure_factor",
    "measure",
    "momentum_distribution",
    "mott_order",
    "occupations",
    "pair_amplitude",
    "pairing",
    "pairing_per_particle",
    "site_densities",
    "spin_correlation",
    "spin_correlation_map",
]
