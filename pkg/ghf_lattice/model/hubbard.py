"""Hubbard model specification and its conversion to Majorana form."""

from typing import Literal

import numpy as np
from loguru import logger
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from ghf_lattice.model.hamiltonian import MajoranaHamiltonian, quadratic_from_one_body
from ghf_lattice.model.lattice import Lattice


class ModelSpec(BaseModel):
    """Two-dimensional Hubbard model on an n_h × n_v lattice.

    ``symmetric`` form: t Σ a†a + u Σ (n↑ − ½)(n↓ − ½) + Σ μ_x n_x.
    ``plain`` form:     t Σ a†a + u Σ n↑n↓ + Σ μ_x n_x.
    μ_x = μ + V_t[((n_h+1)/2 − h)² + ((n_v+1)/2 − v)²]; μ = 0 in the symmetric form is half
    filling. The hopping enters with +t exactly as written.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_h: int = Field(..., ge=2, description="Horizontal lattice extent", examples=[10])
    n_v: int = Field(..., ge=2, description="Vertical lattice extent", examples=[10])
    boundary: Literal["periodic", "open"] = Field("periodic", description="Boundary conditions")
    t: float = Field(1.0, description="Hopping amplitude (energy scale)")
    u: float = Field(0.0, description="On-site interaction", examples=[-4.0])
    mu: float = Field(0.0, description="Chemical potential", examples=[0.0])
    v_t: float = Field(0.0, description="Trap curvature per site²", examples=[0.1])
    interaction_form: Literal["symmetric", "plain"] = Field(
        "symmetric", description="(n↑−½)(n↓−½) or n↑n↓ on-site interaction"
    )

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.n_h, self.n_v, self.boundary)

    @property
    def n_sites(self) -> int:
        return self.n_h * self.n_v

    @property
    def n_modes(self) -> int:
        return 2 * self.n_sites


def one_body_matrix(spec: ModelSpec) -> NDArray[np.float64]:
    """M×M one-body matrix of the quadratic part (hopping, μ_x, plain-form shift)."""
    lattice = spec.lattice
    n = lattice.n_sites
    site_part = lattice.hopping_matrix(spec.t)
    onsite = spec.mu + lattice.trap_profile(spec.v_t)
    if spec.interaction_form == "plain":
        # u n↑n↓ = u(n↑ − ½)(n↓ − ½) + (u/2)(n↑ + n↓) − u/4
        onsite = onsite + 0.5 * spec.u
    site_part = site_part + np.diag(onsite)

    h = np.zeros((2 * n, 2 * n))
    h[:n, :n] = site_part
    h[n:, n:] = site_part
    return h


def onsite_quads(lattice: Lattice) -> NDArray[np.int_]:
    """Ordered Majorana quadruples (s↑, s↓, s↑+M, s↓+M) carrying the on-site interaction."""
    n, m = lattice.n_sites, lattice.n_modes
    sites = np.arange(n)
    return np.stack([sites, sites + n, sites + m, sites + n + m], axis=1)


def build_hubbard(spec: ModelSpec) -> MajoranaHamiltonian:
    """Exact Majorana form (T, U, e0) of a Hubbard model.

    (n↑ − ½)(n↓ − ½) = −¼ c_↑ c_{↑+M} c_↓ c_{↓+M} gives one quartic coefficient +u/4 per site
    on the ordered quadruple (↑, ↓, ↑+M, ↓+M); everything else is quadratic or constant. The
    quartic table is emitted even at u = 0 so Hamiltonians of one lattice can be combined.

    Raises:
        ValueError: For a lattice smaller than 2×2 or an unknown boundary
    """
    lattice = spec.lattice
    t, e0 = quadratic_from_one_body(one_body_matrix(spec))
    if spec.interaction_form == "plain":
        e0 -= 0.25 * spec.u * lattice.n_sites

    quads = onsite_quads(lattice)
    weights = np.full(lattice.n_sites, 0.25 * spec.u)

    logger.debug(
        f"Built {spec.n_h}x{spec.n_v} {spec.boundary} Hubbard model "
        f"(u={spec.u}, mu={spec.mu}, v_t={spec.v_t}, {spec.interaction_form})"
    )
    return MajoranaHamiltonian(T=t, quads=quads, weights=weights, e0=e0)
