"""Exact Fock-space operators for small systems.

Basis states are occupation strings with mode 0 as the least significant bit. Fermion
operators carry a Jordan-Wigner string over the lower modes, so
a_k = Z ⊗ … ⊗ Z ⊗ a ⊗ 𝟙 ⊗ … ⊗ 𝟙 read from mode 0 upwards.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple, Union

import numpy as np
import scipy.sparse as sp
from loguru import logger
from numpy.typing import NDArray
from scipy.sparse.linalg import eigsh

from ghf_lattice.config.solvers import ED_DENSE_MAX_MODES, FOCK_MAX_MODES
from ghf_lattice.model.hamiltonian import MajoranaHamiltonian
from ghf_lattice.model.hubbard import ModelSpec

_LOWER = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
_PARITY = sp.csr_matrix(np.diag([1.0, -1.0]))
_IDENTITY = sp.identity(2, format="csr")


class OracleSizeError(ValueError):
    """Raised when a Fock-space construction would exceed its mode cap."""


def check_modes(modes: int, limit: int = FOCK_MAX_MODES, what: str = "Fock space") -> None:
    if modes > limit:
        raise OracleSizeError(f"{what} is capped at M={limit} modes, got M={modes}")


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Operator on the 2^M-dimensional Fock space of M modes (sparse storage)."""

    matrix: sp.csr_matrix
    modes: int

    @property
    def dim(self) -> int:
        return 2**self.modes

    def dense(self) -> NDArray[np.complex128]:
        return self.matrix.toarray()

    def expectation(self, rho: "FockOperator") -> complex:
        """tr[ρ·O]."""
        return complex(self.matrix.multiply(rho.matrix.T).sum())

    def hermiticity_error(self) -> float:
        diff = self.matrix - self.matrix.conj().T
        return float(np.max(np.abs(diff.data), initial=0.0))


@lru_cache(maxsize=FOCK_MAX_MODES + 1)
def annihilators(modes: int) -> Tuple[sp.csr_matrix, ...]:
    """Jordan-Wigner annihilation operators a_0 … a_{M−1}."""
    check_modes(modes)
    ops = []
    for k in range(modes):
        op = sp.identity(1, format="csr")
        # kron(A, B) puts B on the fast index, so build from the top mode down
        for j in reversed(range(modes)):
            factor = _IDENTITY if j > k else (_LOWER if j == k else _PARITY)
            op = sp.kron(op, factor, format="csr")
        ops.append(op.astype(complex))
    return tuple(ops)


@lru_cache(maxsize=FOCK_MAX_MODES + 1)
def majorana_operators(modes: int) -> Tuple[sp.csr_matrix, ...]:
    """c_k = a†_k + a_k and c_{k+M} = −i(a†_k − a_k) for k < M."""
    a = annihilators(modes)
    first = [op.conj().T + op for op in a]
    second = [-1j * (op.conj().T - op) for op in a]
    return tuple(sp.csr_matrix(op) for op in first + second)


def number_operator(modes: int) -> FockOperator:
    a = annihilators(modes)
    total = sum((op.conj().T @ op for op in a), sp.csr_matrix((2**modes, 2**modes)))
    return FockOperator(sp.csr_matrix(total), modes)


def fock_hamiltonian(hamiltonian: MajoranaHamiltonian) -> FockOperator:
    """i Σ T_kl c_k c_l + Σ_q w_q c_i c_j c_k c_l + e0 on the full Fock space.

    Raises:
        OracleSizeError: If M exceeds FOCK_MAX_MODES
    """
    modes = hamiltonian.modes
    check_modes(modes)
    c = majorana_operators(modes)
    dim = 2**modes
    h = sp.csr_matrix((dim, dim), dtype=complex)

    rows, cols = np.nonzero(hamiltonian.T)
    for k, l in zip(rows, cols):
        h = h + 1j * hamiltonian.T[k, l] * (c[k] @ c[l])
    for (i, j, k, l), w in zip(hamiltonian.quads, hamiltonian.weights):
        if w != 0.0:
            h = h + w * (c[i] @ c[j] @ c[k] @ c[l])
    h = h + hamiltonian.e0 * sp.identity(dim, format="csr")
    return FockOperator(sp.csr_matrix(h), modes)


def fock_hubbard(spec: ModelSpec) -> FockOperator:
    """Second-quantized Hubbard Hamiltonian built directly from fermion operators.

    Uses the same site and spin ordering as the Majorana builder but none of its algebra,
    so the two constructions certify each other.
    """
    lattice = spec.lattice
    modes = lattice.n_modes
    check_modes(modes)
    a = annihilators(modes)
    dim = 2**modes
    eye = sp.identity(dim, format="csr")
    n = [op.conj().T @ op for op in a]

    h = sp.csr_matrix((dim, dim), dtype=complex)
    hopping = lattice.hopping_matrix(spec.t)
    potential = spec.mu + lattice.trap_profile(spec.v_t)
    for spin in (0, 1):
        for x in range(lattice.n_sites):
            mx = lattice.mode(x, spin)
            h = h + potential[x] * n[mx]
            for y in np.flatnonzero(hopping[x]):
                h = h + hopping[x, y] * (a[mx].conj().T @ a[lattice.mode(int(y), spin)])

    for x in range(lattice.n_sites):
        up, down = n[lattice.mode(x, 0)], n[lattice.mode(x, 1)]
        if spec.interaction_form == "symmetric":
            h = h + spec.u * ((up - 0.5 * eye) @ (down - 0.5 * eye))
        else:
            h = h + spec.u * (up @ down)
    return FockOperator(sp.csr_matrix(h), modes)


def ed_ground(
    hamiltonian: Union[MajoranaHamiltonian, FockOperator],
) -> Tuple[float, NDArray[np.complex128]]:
    """Lowest eigenpair by exact diagonalization.

    Dense ``eigh`` up to ED_DENSE_MAX_MODES modes, Lanczos (``eigsh``) above.

    Raises:
        OracleSizeError: If M exceeds FOCK_MAX_MODES
    """
    op = hamiltonian if isinstance(hamiltonian, FockOperator) else fock_hamiltonian(hamiltonian)
    check_modes(op.modes)
    if op.modes <= ED_DENSE_MAX_MODES:
        values, vectors = np.linalg.eigh(op.dense())
        energy, state = float(values[0]), vectors[:, 0]
    else:
        values, vectors = eigsh(op.matrix, k=1, which="SA")
        energy, state = float(values[0]), vectors[:, 0]
    logger.debug(f"Exact ground energy for M={op.modes}: {energy:.12f}")
    return energy, state


def anticommutator_errors(modes: int) -> List[float]:
    """max |{c_k, c_l} − 2δ_kl| for every pair k ≤ l."""
    c = majorana_operators(modes)
    dim = 2**modes
    eye = sp.identity(dim, format="csr")
    errors = []
    for k in range(2 * modes):
        for l in range(k, 2 * modes):
            diff = c[k] @ c[l] + c[l] @ c[k] - (2.0 if k == l else 0.0) * eye
            errors.append(float(np.max(np.abs(diff.data), initial=0.0)))
    return errors
