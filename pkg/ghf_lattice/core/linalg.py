"""Functions of real antisymmetric matrices.

Every matrix function here is evaluated through the Hermitian eigenproblem of ``i·A``: for a
real antisymmetric A the matrix iA is Hermitian with a real spectrum ±λ, so exponentials,
hyperbolic tangents and logarithms reduce to scalar maps on λ followed by a back-rotation.
"""

from typing import Callable, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ghf_lattice.config.solvers import ANTISYMMETRY_TOL, LOG_CLIP_EPS, ZERO_MODE_TOL


def check_skew(matrix: ArrayLike, name: str = "matrix") -> NDArray[np.float64]:
    """Return ``matrix`` as an exactly antisymmetric float array.

    Raises:
        ValueError: If the input is not square or deviates from antisymmetry by more than
            ANTISYMMETRY_TOL relative to its largest entry.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    err = float(np.max(np.abs(a + a.T))) if a.size else 0.0
    if err > ANTISYMMETRY_TOL * scale:
        raise ValueError(f"{name} must be antisymmetric (max |A+Aᵀ| = {err:.3e})")
    return 0.5 * (a - a.T)


def skew_eigh(matrix: ArrayLike) -> Tuple[NDArray[np.float64], NDArray[np.complex128]]:
    """Eigendecomposition of the Hermitian matrix ``i·A``.

    Returns:
        Eigenvalues (ascending) and unitary eigenvectors as columns.
    """
    return np.linalg.eigh(1j * np.asarray(matrix, dtype=float))


def hermitian_function(
    matrix: ArrayLike, func: Callable[[NDArray[np.float64]], NDArray]
) -> NDArray[np.complex128]:
    """Evaluate ``f(i·A) = V f(λ) V†`` for a real antisymmetric A."""
    values, vectors = skew_eigh(matrix)
    return (vectors * func(values)) @ vectors.conj().T


def pfaffian(matrix: ArrayLike) -> float:
    """Pfaffian of an antisymmetric matrix by Parlett-Reid skew tridiagonalization.

    Uses the convention in which A₁₂A₃₄…A_{n−1,n} enters with a positive sign, so that
    Pf(A)² = det(A).

    Args:
        matrix: Even-dimensional antisymmetric matrix (real or complex)

    Returns:
        The Pfaffian (complex only if the input is complex)

    Raises:
        ValueError: If the dimension is odd or the input is not antisymmetric
    """
    a = np.array(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"Pfaffian needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n % 2:
        raise ValueError(f"Pfaffian is defined for even dimension only, got {n}")
    if np.max(np.abs(a + a.T), initial=0.0) > ANTISYMMETRY_TOL * max(
        1.0, np.max(np.abs(a), initial=0.0)
    ):
        raise ValueError("Pfaffian needs an antisymmetric matrix")

    a = a.astype(np.result_type(a.dtype, np.float64), copy=True)
    result = a.dtype.type(1.0)

    for k in range(0, n - 1, 2):
        # Largest entry of column k below the diagonal becomes the pivot
        pivot = k + 1 + int(np.abs(a[k + 1 :, k]).argmax())
        if pivot != k + 1:
            a[[k + 1, pivot], k:] = a[[pivot, k + 1], k:]
            a[k:, [k + 1, pivot]] = a[k:, [pivot, k + 1]]
            result = -result

        if a[k + 1, k] == 0.0:
            return a.dtype.type(0.0).item()

        result = result * a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2 :] / a[k, k + 1]
            a[k + 2 :, k + 2 :] += np.outer(tau, a[k + 2 :, k + 1])
            a[k + 2 :, k + 2 :] -= np.outer(a[k + 2 :, k + 1], tau)

    return result.item()


def orthogonal_exp(generator: ArrayLike) -> NDArray[np.float64]:
    """Matrix exponential of an antisymmetric generator.

    The result is orthogonal with determinant +1; ``exp(A)`` is assembled as
    ``V e^{−iλ} V†`` from the spectrum of iA.

    Raises:
        ValueError: If the generator is not antisymmetric
    """
    a = check_skew(generator, "generator")
    return hermitian_function(a, lambda lam: np.exp(-1j * lam)).real


def gibbs_spectrum(hbar: ArrayLike, beta: float) -> Tuple[NDArray[np.float64], float]:
    """Γ = i·tanh(2iβh̄) together with its largest singular value max|tanh(2βλ)|.

    Raises:
        ValueError: If beta is not positive or hbar is not antisymmetric
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    h = check_skew(hbar, "hbar")
    values, vectors = skew_eigh(h)
    occupations = np.tanh(2.0 * beta * values)
    gamma = (1j * ((vectors * occupations) @ vectors.conj().T)).real
    return 0.5 * (gamma - gamma.T), float(np.max(np.abs(occupations), initial=0.0))


def sign_cm(hbar: ArrayLike) -> NDArray[np.float64]:
    """Zero-temperature limit Γ = i·sign(2ih̄); zero modes are left maximally mixed.

    Levels with |λ| ≤ ZERO_MODE_TOL·max(1, max|λ|) count as zero modes, so roundoff in a
    degenerate Fermi surface does not pick an arbitrary filling.
    """
    h = check_skew(hbar, "hbar")
    values, vectors = skew_eigh(h)
    cutoff = ZERO_MODE_TOL * max(1.0, float(np.max(np.abs(values), initial=0.0)))
    signs = np.where(np.abs(values) <= cutoff, 0.0, np.sign(values))
    gamma = (1j * ((vectors * signs) @ vectors.conj().T)).real
    return 0.5 * (gamma - gamma.T)


def cm_log_term(gamma: ArrayLike, eps: float = LOG_CLIP_EPS) -> NDArray[np.float64]:
    """The matrix (i/4)·ln[(𝟙 + iΓ)(𝟙 − iΓ)⁻¹] entering the free-energy gradient.

    Eigenvalues of iΓ are clipped to [−1 + eps, 1 − eps] before the logarithm, so near-pure
    inputs give large but finite output. Dividing by β inverts ``tanh_gibbs``.
    """
    g = check_skew(gamma, "gamma")
    out = (
        0.5j * hermitian_function(g, lambda lam: np.arctanh(np.clip(lam, -1 + eps, 1 - eps)))
    ).real
    return 0.5 * (out - out.T)


def purify(gamma: ArrayLike) -> NDArray[np.float64]:
    """Polar projection of a nearly pure Γ onto the nearest Γ with Γ² = −𝟙."""
    g = check_skew(gamma, "gamma")
    out = (-1j * hermitian_function(g, np.sign)).real
    return 0.5 * (out - out.T)


def commutator(a: NDArray, b: NDArray) -> NDArray:
    """[A, B] = AB − BA."""
    return a @ b - b @ a
