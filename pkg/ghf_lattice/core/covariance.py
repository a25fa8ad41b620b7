"""Majorana covariance matrices.

Conventions: for M complex modes a_k the Majorana operators are c_k = a†_k + a_k and
c_{k+M} = −i(a†_k − a_k) (0-based here: k and k + M pair up), and the covariance matrix is
Γ_kl = ⟨(i/2)[c_k, c_l]⟩. The vacuum has Γ_{k,k+M} = +1 and n_k = (1 − Γ_{k,k+M}) / 2.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import entr

from ghf_lattice.config.solvers import ANTISYMMETRY_TOL, PHYSICALITY_TOL
from ghf_lattice.core.linalg import check_skew, gibbs_spectrum, skew_eigh
from ghf_lattice.validation.validators import validate_covariance


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Immutable real antisymmetric 2M×2M covariance matrix of a fermionic Gaussian state.

    Construction enforces squareness, even dimension and antisymmetry to ANTISYMMETRY_TOL;
    physicality is not required here so that invalid candidates can still be inspected.
    """

    gamma: NDArray[np.float64]

    def __post_init__(self):
        g = np.array(self.gamma, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"Covariance matrix must be square, got shape {g.shape}")
        if g.shape[0] == 0 or g.shape[0] % 2:
            raise ValueError(f"Covariance matrix must have even dimension 2M, got {g.shape[0]}")
        err = float(np.max(np.abs(g + g.T)))
        if err > ANTISYMMETRY_TOL:
            raise ValueError(f"Covariance matrix must be antisymmetric (max |Γ+Γᵀ| = {err:.3e})")
        g = 0.5 * (g - g.T)
        g.flags.writeable = False
        object.__setattr__(self, "gamma", g)

    @property
    def modes(self) -> int:
        """Number of complex fermionic modes M."""
        return self.gamma.shape[0] // 2

    @property
    def dim(self) -> int:
        """Number of Majorana operators 2M."""
        return self.gamma.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.gamma, dtype=dtype)

    def __repr__(self) -> str:
        return f"CovarianceMatrix(modes={self.modes})"


GammaLike = Union[CovarianceMatrix, ArrayLike]


def gamma_array(gamma: GammaLike) -> NDArray[np.float64]:
    """Plain antisymmetric array view of a covariance matrix or array-like."""
    if isinstance(gamma, CovarianceMatrix):
        return gamma.gamma
    return check_skew(gamma, "gamma")


def physical_cm(gamma: ArrayLike, context: str = "state") -> CovarianceMatrix:
    """Wrap an array as CovarianceMatrix after asserting physicality."""
    cm = CovarianceMatrix(gamma)
    validate_covariance(cm.gamma, context=context)
    return cm


def vacuum_cm(modes: int) -> CovarianceMatrix:
    """Covariance matrix of the Fock vacuum |0⟩ on ``modes`` complex modes."""
    if modes < 1:
        raise ValueError(f"Mode count must be at least 1, got {modes}")
    return product_state_cm(np.zeros(modes))


def product_state_cm(occupations: Sequence[float]) -> CovarianceMatrix:
    """Covariance matrix of an uncorrelated product state with given occupations n_k ∈ [0, 1].

    Integer occupations give Fock states; ½ everywhere gives the maximally mixed state.
    """
    n = np.asarray(occupations, dtype=float)
    if n.ndim != 1 or n.size == 0:
        raise ValueError("Occupations must be a non-empty 1D sequence")
    if np.any(n < 0) or np.any(n > 1):
        raise ValueError("Occupations must lie in [0, 1]")
    modes = n.size
    gamma = np.zeros((2 * modes, 2 * modes))
    idx = np.arange(modes)
    gamma[idx, idx + modes] = 1.0 - 2.0 * n
    gamma[idx + modes, idx] = -(1.0 - 2.0 * n)
    return CovarianceMatrix(gamma)


def random_orthogonal(dim: int, seed: Optional[int]) -> NDArray[np.float64]:
    """Seeded random orthogonal matrix from the QR factorization of a Gaussian matrix.

    The diagonal of R is sign-fixed so the distribution is Haar.
    """
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def random_pure_cm(modes: int, seed: Optional[int] = None) -> CovarianceMatrix:
    """Random pure covariance matrix O·J·Oᵀ with J the vacuum and O Haar on SO(2M).

    det O = +1 keeps the even fermion parity of the vacuum; both flows conserve parity, so a
    random start lands in the sector that holds the even-parity ground state.
    """
    if modes < 1:
        raise ValueError(f"Mode count must be at least 1, got {modes}")
    o = random_orthogonal(2 * modes, seed)
    if np.linalg.det(o) < 0:
        o[:, 0] = -o[:, 0]
    return physical_cm(o @ vacuum_cm(modes).gamma @ o.T, context="random pure state")


def random_mixed_cm(modes: int, seed: Optional[int] = None) -> CovarianceMatrix:
    """Random strictly mixed covariance matrix with canonical values drawn from [0, 1)."""
    if modes < 1:
        raise ValueError(f"Mode count must be at least 1, got {modes}")
    rng = np.random.default_rng(seed)
    lam = rng.uniform(0.0, 1.0, size=modes)
    o = random_orthogonal(2 * modes, rng.integers(2**32))
    core = product_state_cm((1.0 - lam) / 2.0).gamma
    return physical_cm(o @ core @ o.T, context="random mixed state")


def random_slater_cm(
    modes: int, n_particles: int, seed: Optional[int] = None
) -> CovarianceMatrix:
    """Random number-conserving pure state: a Slater determinant of ``n_particles`` orbitals.

    A real orthogonal rotation R of the complex modes acts on the Majoranas as diag(R, R),
    which commutes with the particle-number generator.
    """
    if not 0 <= n_particles <= modes:
        raise ValueError(f"n_particles must lie in [0, {modes}], got {n_particles}")
    occupations = np.zeros(modes)
    occupations[:n_particles] = 1.0
    r = random_orthogonal(modes, seed)
    o = np.zeros((2 * modes, 2 * modes))
    o[:modes, :modes] = r
    o[modes:, modes:] = r
    gamma = o @ product_state_cm(occupations).gamma @ o.T
    return physical_cm(gamma, context="random Slater determinant")


def singular_values(gamma: GammaLike) -> NDArray[np.float64]:
    """Singular values of Γ, i.e. |eigenvalues| of the Hermitian matrix iΓ."""
    return np.abs(skew_eigh(gamma_array(gamma))[0])


def is_physical(gamma: GammaLike, tol: float = PHYSICALITY_TOL) -> bool:
    """True iff every singular value of Γ is at most 1 + tol (iΓ − 𝟙 ≤ 0)."""
    return bool(np.max(singular_values(gamma)) <= 1.0 + tol)


def purity_error(gamma: GammaLike) -> float:
    """‖Γ² + 𝟙‖_F / 2M."""
    g = gamma_array(gamma)
    return float(np.linalg.norm(g @ g + np.eye(g.shape[0])) / g.shape[0])


def is_pure(gamma: GammaLike, tol: float = PHYSICALITY_TOL) -> bool:
    """True iff ‖Γ² + 𝟙‖_F ≤ tol·2M."""
    return purity_error(gamma) <= tol


def entropy(gamma: GammaLike) -> float:
    """Von Neumann entropy in nats, S = Σ_j H₂((1 + λ_j)/2) over the canonical values λ_j.

    Raises:
        ValueError: If Γ is not physical to within 1e-8
    """
    lam = skew_eigh(gamma_array(gamma))[0]
    if np.max(np.abs(lam)) > 1.0 + PHYSICALITY_TOL:
        raise ValueError("Entropy requires a physical covariance matrix")
    lam = np.clip(lam, -1.0, 1.0)
    # The ±λ spectrum counts each mode twice
    return float(0.5 * np.sum(entr((1.0 + lam) / 2.0) + entr((1.0 - lam) / 2.0)))


def tanh_gibbs(hbar: ArrayLike, beta: float) -> CovarianceMatrix:
    """Gibbs covariance matrix Γ = i·tanh(2iβh̄) of the quadratic Hamiltonian i Σ h̄ c c.

    Args:
        hbar: Antisymmetric mean-field matrix
        beta: Inverse temperature, strictly positive

    Returns:
        Physical CovarianceMatrix; strictly mixed wherever 2β|λ| is finite

    Raises:
        ValueError: If beta is not positive or hbar is not antisymmetric
    """
    gamma, _ = gibbs_spectrum(hbar, beta)
    return CovarianceMatrix(gamma)
