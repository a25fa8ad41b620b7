"""Majorana-form Hamiltonians and the mean-field functionals shared by every solver.

A Hamiltonian is stored as H = i Σ T_kl c_k c_l + Σ_q w_q c_i c_j c_k c_l + e0, where the
quartic part is a list of strictly increasing index quadruples q = (i, j, k, l) with the
coefficient w_q of the ordered monomial. The fully antisymmetric tensor U of the mean-field
equations is U_{σ(q)} = sign(σ)·w_q / 24 and is never materialized by the solvers.
"""

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ghf_lattice.core.covariance import GammaLike, gamma_array
from ghf_lattice.core.linalg import check_skew

# (a, b | k, l, sign): each quadruple splits into six pairings; sign is the parity of the
# permutation (a, b, k, l) of (0, 1, 2, 3).
_PAIRINGS = (
    (0, 1, 2, 3, 1.0),
    (0, 2, 1, 3, -1.0),
    (0, 3, 1, 2, 1.0),
    (1, 2, 0, 3, 1.0),
    (1, 3, 0, 2, -1.0),
    (2, 3, 0, 1, 1.0),
)


@dataclass(frozen=True, eq=False)
class MajoranaHamiltonian:
    """Immutable (T, U, e0) triple.

    Attributes:
        T: Antisymmetric 2M×2M quadratic coefficients
        quads: (n_q, 4) strictly increasing Majorana index quadruples
        weights: (n_q,) coefficients of the ordered quartic monomials
        e0: Scalar energy offset
    """

    T: NDArray[np.float64]
    quads: NDArray[np.int_] = field(default_factory=lambda: np.zeros((0, 4), dtype=int))
    weights: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    e0: float = 0.0

    def __post_init__(self):
        t = check_skew(self.T, "T")
        if t.shape[0] % 2 or t.shape[0] == 0:
            raise ValueError(f"T must have even dimension 2M, got {t.shape[0]}")
        quads = np.array(self.quads, dtype=int).reshape(-1, 4)
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if quads.shape[0] != weights.shape[0]:
            raise ValueError("quads and weights must have the same length")
        if quads.size and (np.any(np.diff(quads, axis=1) <= 0) or quads.min() < 0):
            raise ValueError("Quartic indices must be strictly increasing and non-negative")
        if quads.size and quads.max() >= t.shape[0]:
            raise ValueError("Quartic index out of range for T")
        for arr in (t, quads, weights):
            arr.flags.writeable = False
        object.__setattr__(self, "T", t)
        object.__setattr__(self, "quads", quads)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "e0", float(self.e0))

    @property
    def modes(self) -> int:
        return self.T.shape[0] // 2

    @property
    def dim(self) -> int:
        return self.T.shape[0]

    @property
    def is_quadratic(self) -> bool:
        return not np.any(self.weights)

    def combine(self, other: "MajoranaHamiltonian", scale: float = 1.0) -> "MajoranaHamiltonian":
        """Return self + scale·other; both must share the same quartic index table."""
        if other.dim != self.dim or not np.array_equal(other.quads, self.quads):
            raise ValueError("Hamiltonians must share dimension and quartic index table")
        return MajoranaHamiltonian(
            T=self.T + scale * other.T,
            quads=self.quads,
            weights=self.weights + scale * other.weights,
            e0=self.e0 + scale * other.e0,
        )

    def dense_quartic(self) -> NDArray[np.float64]:
        """Fully antisymmetric four-index tensor U (reference use only, small M)."""
        dim = self.dim
        u = np.zeros((dim,) * 4)
        for quad, w in zip(self.quads, self.weights):
            for perm in permutations(range(4)):
                u[tuple(quad[list(perm)])] = _parity(perm) * w / 24.0
        return u


def _parity(perm) -> float:
    perm = list(perm)
    sign = 1.0
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def quadratic_from_one_body(h: ArrayLike) -> tuple[NDArray[np.float64], float]:
    """Majorana form of Σ_xy h_xy a†_x a_y for a real symmetric M×M matrix h.

    Returns:
        (T, e0) with T = ¼[[0, −h], [h, 0]] and e0 = tr(h)/2
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("One-body matrix must be square")
    if np.max(np.abs(h - h.T), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(h), initial=0.0)):
        raise ValueError("One-body matrix must be symmetric")
    m = h.shape[0]
    t = np.zeros((2 * m, 2 * m))
    t[:m, m:] = -0.25 * h
    t[m:, :m] = 0.25 * h
    return t, 0.5 * float(np.trace(h))


def _check_dims(hamiltonian: MajoranaHamiltonian, gamma: NDArray) -> None:
    if gamma.shape != hamiltonian.T.shape:
        raise ValueError(
            f"Dimension mismatch: Hamiltonian is {hamiltonian.T.shape}, Γ is {gamma.shape}"
        )


def mean_field(hamiltonian: MajoranaHamiltonian, gamma: GammaLike) -> NDArray[np.float64]:
    """Mean-field matrix h̄(Γ) = T + 6·tr_B[UΓ] with tr_B[UΓ]_ij = Σ_kl U_ijkl Γ_lk.

    Cost is O(M²) for the copy of T plus O(n_q) for the sparse quartic table.
    """
    g = gamma_array(gamma)
    _check_dims(hamiltonian, g)
    hbar = np.array(hamiltonian.T)
    if not hamiltonian.weights.size:
        return hbar
    q, w = hamiltonian.quads, hamiltonian.weights
    for a, b, k, l, sign in _PAIRINGS:
        vals = -0.5 * sign * w * g[q[:, k], q[:, l]]
        np.add.at(hbar, (q[:, a], q[:, b]), vals)
        np.add.at(hbar, (q[:, b], q[:, a]), -vals)
    return hbar


def energy(
    hamiltonian: MajoranaHamiltonian, gamma: GammaLike, hbar: Optional[NDArray] = None
) -> float:
    """E = −tr[(T + 3·tr_B[UΓ])Γ] + e0, evaluated as −½·tr[(T + h̄)Γ] + e0.

    Args:
        hamiltonian: Majorana Hamiltonian
        gamma: Covariance matrix
        hbar: Precomputed h̄(Γ), if available
    """
    g = gamma_array(gamma)
    _check_dims(hamiltonian, g)
    if hbar is None:
        hbar = mean_field(hamiltonian, g)
    # tr[XΓ] = Σ X_ij Γ_ji = −Σ X_ij Γ_ij for antisymmetric Γ
    return float(0.5 * np.sum((hamiltonian.T + hbar) * g) + hamiltonian.e0)


def particle_number(gamma: GammaLike) -> float:
    """N = M/2 − ¼·tr[νΓ] = M/2 − ½·Σ_k Γ_{k,k+M}."""
    g = gamma_array(gamma)
    m = g.shape[0] // 2
    return float(m / 2.0 - 0.5 * np.trace(g[:m, m:]))


def number_generator(modes: int) -> NDArray[np.float64]:
    """The antisymmetric matrix ν with N̂ = M/2 + (i/4) Σ ν_kl c_k c_l."""
    nu = np.zeros((2 * modes, 2 * modes))
    idx = np.arange(modes)
    nu[idx, idx + modes] = -1.0
    nu[idx + modes, idx] = 1.0
    return nu
