"""Abstract interfaces for the solver components."""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Dict

if TYPE_CHECKING:
    from ghf_lattice.model.hamiltonian import MajoranaHamiltonian


class HamiltonianSource(ABC):
    """Abstract provider of a possibly time-dependent Majorana Hamiltonian."""

    @abstractmethod
    def hamiltonian_at(self, time: float) -> "MajoranaHamiltonian":
        """Return the Hamiltonian at the given time.

        Args:
            time: Evolution time (units of 1/t)

        Returns:
            MajoranaHamiltonian valid at that instant
        """
        pass

    def parameters_at(self, time: float) -> Dict[str, float]:
        """Return the model parameters driven by the source at the given time.

        Args:
            time: Evolution time

        Returns:
            Mapping from parameter name to value (empty for static sources)
        """
        return {}
