"""Majorana correlators of Gaussian states via Wick's theorem.

Indices are 0-based Majorana labels in ``range(2M)``. For strictly increasing labels
``i^p · tr[ρ c_{j1} … c_{j2p}] = Pf(Γ restricted to j1 … j2p)``, so correlators are complex in
general (two-point functions are purely imaginary off the diagonal).
"""

from typing import List, Sequence, Tuple

import numpy as np

from ghf_lattice.core.covariance import GammaLike, gamma_array
from ghf_lattice.core.linalg import pfaffian


def reduce_monomial(indices: Sequence[int]) -> Tuple[int, List[int]]:
    """Bring a Majorana monomial to strictly increasing order using the CAR.

    Distinct Majoranas anticommute and c_k² = 𝟙, so every monomial equals ±1 times an
    ordered monomial without repeats.

    Returns:
        (sign, ordered indices)
    """
    sign = 1
    ordered: List[int] = []
    for idx in indices:
        pos = len(ordered)
        while pos > 0 and ordered[pos - 1] > idx:
            pos -= 1
        if (len(ordered) - pos) % 2:
            sign = -sign
        if pos > 0 and ordered[pos - 1] == idx:
            ordered.pop(pos - 1)
        else:
            ordered.insert(pos, idx)
    return sign, ordered


def _check_indices(indices: Sequence[int], dim: int) -> None:
    for idx in indices:
        if not 0 <= idx < dim:
            raise ValueError(f"Majorana index {idx} out of range [0, {dim})")


def majorana_moment(gamma: GammaLike, indices: Sequence[int]) -> complex:
    """⟨c_{j1} c_{j2} …⟩ for an arbitrary index sequence (repeats and any order allowed)."""
    g = gamma_array(gamma)
    _check_indices(indices, g.shape[0])
    sign, ordered = reduce_monomial(indices)
    if len(ordered) % 2:
        return 0j
    if not ordered:
        return complex(sign)
    p = len(ordered) // 2
    sub = g[np.ix_(ordered, ordered)]
    return sign * (1j) ** (-p) * complex(pfaffian(sub))


def wick_four(gamma: GammaLike, i: int, j: int, k: int, l: int) -> complex:
    """⟨c_i c_j c_k c_l⟩ = −(Γ_ij Γ_kl − Γ_ik Γ_jl + Γ_il Γ_jk) for distinct indices.

    Coinciding indices are first reduced with c_k² = 𝟙.

    Raises:
        ValueError: If an index is out of range
    """
    g = gamma_array(gamma)
    _check_indices((i, j, k, l), g.shape[0])
    if len({i, j, k, l}) < 4:
        return majorana_moment(g, (i, j, k, l))
    return complex(-(g[i, j] * g[k, l] - g[i, k] * g[j, l] + g[i, l] * g[j, k]))


def wick_2p(gamma: GammaLike, indices: Sequence[int]) -> complex:
    """tr[ρ c_{j1} … c_{j2p}] = i^{−p}·Pf(Γ restricted to the indices).

    Raises:
        ValueError: If the indices are not strictly increasing, have odd length or are out
            of range
    """
    indices = list(indices)
    if len(indices) % 2 or not indices:
        raise ValueError("wick_2p needs a non-empty, even number of indices")
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise ValueError("wick_2p needs strictly increasing indices")
    return majorana_moment(gamma, indices)
