"""Named observable registry and the record assembled from it."""

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from ghf_lattice.core.covariance import GammaLike, entropy, gamma_array
from ghf_lattice.model.hamiltonian import MajoranaHamiltonian, energy, particle_number
from ghf_lattice.model.lattice import Lattice
from ghf_lattice.observables.correlators import (
    af_order,
    center_density,
    density_profile,
    mott_order,
    pairing,
    pairing_per_particle,
    spin_correlation,
    spin_correlation_map,
)
from ghf_lattice.observables.momentum import (
    magnetic_structure_factor,
    momentum_distribution,
    pair_amplitude,
)

ScalarFn = Callable[[NDArray, Lattice], float]
FieldFn = Callable[[NDArray, Lattice], NDArray]

SCALAR_OBSERVABLES: Dict[str, ScalarFn] = {
    "particle_number": lambda g, lat: particle_number(g),
    "pairing": lambda g, lat: pairing(g),
    "pairing_per_particle": lambda g, lat: pairing_per_particle(g),
    "entropy": lambda g, lat: entropy(g),
    "center_density": center_density,
    "spin_correlation_00": lambda g, lat: spin_correlation(g, lat, (0, 0)),
    "af_order": lambda g, lat: af_order(g, lat, 1),
    "mott_order": mott_order,
}

FIELD_OBSERVABLES: Dict[str, FieldFn] = {
    "density_profile": density_profile,
    "momentum_distribution": lambda g, lat: momentum_distribution(g, lat, spin=0),
    "spin_correlation": spin_correlation_map,
    "structure_factor": lambda g, lat: magnetic_structure_factor(g, lat).values,
    "pair_amplitude": lambda g, lat: pair_amplitude(g, lat).values,
}

# Scalars that need the Hamiltonian rather than only (Γ, lattice)
HAMILTONIAN_SCALARS = ("energy",)


def known_observables() -> list[str]:
    """Every name accepted by ``measure``."""
    return [*HAMILTONIAN_SCALARS, *SCALAR_OBSERVABLES, *FIELD_OBSERVABLES]


@dataclass
class ObservableRecord:
    """Scalar and field observables of one state.

    Fields keep the lattice shape (n_v, n_h).
    """

    scalars: Dict[str, float] = field(default_factory=dict)
    fields: Dict[str, NDArray[np.float64]] = field(default_factory=dict)

    def is_finite(self) -> bool:
        return all(np.isfinite(v) for v in self.scalars.values()) and all(
            np.all(np.isfinite(v)) for v in self.fields.values()
        )


def measure(
    gamma: GammaLike,
    lattice: Lattice,
    names: Sequence[str],
    hamiltonian: Optional[MajoranaHamiltonian] = None,
) -> ObservableRecord:
    """Evaluate the named observables on Γ.

    Raises:
        ValueError: For an unknown name, or "energy" without a Hamiltonian
    """
    g = gamma_array(gamma)
    record = ObservableRecord()
    for name in names:
        if name == "energy":
            if hamiltonian is None:
                raise ValueError("Observable 'energy' needs the Hamiltonian")
            record.scalars[name] = energy(hamiltonian, g)
        elif name in SCALAR_OBSERVABLES:
            record.scalars[name] = float(SCALAR_OBSERVABLES[name](g, lattice))
        elif name in FIELD_OBSERVABLES:
            record.fields[name] = np.asarray(FIELD_OBSERVABLES[name](g, lattice))
        else:
            raise ValueError(
                f"Unknown observable '{name}'; choose from {', '.join(known_observables())}"
            )
    return record
