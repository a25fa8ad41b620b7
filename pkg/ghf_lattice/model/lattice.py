"""Rectangular lattice geometry shared by the model builder and the observables."""

from dataclasses import dataclass
from typing import List, Literal, Tuple

import numpy as np
from numpy.typing import NDArray

Boundary = Literal["periodic", "open"]


@dataclass(frozen=True)
class Lattice:
    """An n_h × n_v rectangular lattice.

    Sites are numbered row-major, ``site = iy * n_h + ix`` with 0-based coordinates. Complex
    modes are ``spin * n_sites + site`` with spin 0 (up) before spin 1 (down).
    """

    n_h: int
    n_v: int
    boundary: Boundary = "periodic"

    def __post_init__(self):
        if self.n_h < 2 or self.n_v < 2:
            raise ValueError(f"Lattice too small: n_h and n_v must be >= 2, got {self.shape}")
        if self.boundary not in ("periodic", "open"):
            raise ValueError(f"Unknown boundary '{self.boundary}', use 'periodic' or 'open'")

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_h, self.n_v)

    @property
    def n_sites(self) -> int:
        return self.n_h * self.n_v

    @property
    def n_modes(self) -> int:
        return 2 * self.n_sites

    @property
    def periodic(self) -> bool:
        return self.boundary == "periodic"

    def site(self, ix: int, iy: int) -> int:
        return iy * self.n_h + ix

    def coordinates(self) -> NDArray[np.int_]:
        """(n_sites, 2) array of 0-based (ix, iy) coordinates."""
        iy, ix = np.divmod(np.arange(self.n_sites), self.n_h)
        return np.stack([ix, iy], axis=1)

    def mode(self, site: int, spin: int) -> int:
        return spin * self.n_sites + site

    def bonds(self) -> List[Tuple[int, int]]:
        """Directed nearest-neighbour bonds (x → x + e_h, x → x + e_v).

        Periodic extents of 2 produce each bond twice, which keeps the band
        ε(k) = 2t(cos k_h + cos k_v) exact on every periodic lattice.
        """
        bonds = []
        for iy in range(self.n_v):
            for ix in range(self.n_h):
                here = self.site(ix, iy)
                if ix + 1 < self.n_h or self.periodic:
                    bonds.append((here, self.site((ix + 1) % self.n_h, iy)))
                if iy + 1 < self.n_v or self.periodic:
                    bonds.append((here, self.site(ix, (iy + 1) % self.n_v)))
        return bonds

    def hopping_matrix(self, t: float) -> NDArray[np.float64]:
        """Symmetric site-space matrix of t Σ_⟨x,y⟩ a†_x a_y."""
        h = np.zeros((self.n_sites, self.n_sites))
        for a, b in self.bonds():
            h[a, b] += t
            h[b, a] += t
        return h

    def trap_profile(self, v_t: float) -> NDArray[np.float64]:
        """V_t[((n_h+1)/2 − h)² + ((n_v+1)/2 − v)²] with 1-based (h, v) per site."""
        coords = self.coordinates() + 1
        return v_t * (
            ((self.n_h + 1) / 2.0 - coords[:, 0]) ** 2 + ((self.n_v + 1) / 2.0 - coords[:, 1]) ** 2
        )

    def center_sites(self) -> List[int]:
        """Sites closest to the geometric centre (1, 2 or 4 of them)."""
        distance = self.trap_profile(1.0)
        return [int(s) for s in np.flatnonzero(np.isclose(distance, distance.min()))]

    def momenta(self) -> NDArray[np.float64]:
        """(n_sites, 2) grid of lattice momenta 2π(m_h/n_h, m_v/n_v) in site order."""
        return 2.0 * np.pi * self.coordinates() / np.array([self.n_h, self.n_v])

    def shift(self, site: int, dx: int, dy: int) -> int:
        """Site displaced by (dx, dy), or -1 if it falls off an open lattice."""
        ix, iy = site % self.n_h + dx, site // self.n_h + dy
        if self.periodic:
            return self.site(ix % self.n_h, iy % self.n_v)
        if 0 <= ix < self.n_h and 0 <= iy < self.n_v:
            return self.site(ix, iy)
        return -1

    def translation(self, dx: int, dy: int) -> NDArray[np.int_]:
        """Site permutation of a cyclic translation (periodic lattices only)."""
        if not self.periodic:
            raise ValueError("Translations are only defined on periodic lattices")
        return np.array([self.shift(s, dx, dy) for s in range(self.n_sites)])
