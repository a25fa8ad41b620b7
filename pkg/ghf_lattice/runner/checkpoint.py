"""
Binary checkpoints of covariance matrices.

Layout (little-endian): a fixed-width header followed by the full 2M×2M Γ as row-major
float64. Header fields in order:

    magic       6 bytes  b"GHFCM1"
    version     uint16
    modes       uint32   M
    n_h, n_v    uint32   lattice extents
    boundary    uint8    0 periodic, 1 open
    form        uint8    0 symmetric, 1 plain
    t, u, mu, v_t        float64 model parameters
    created     float64  POSIX timestamp
"""

import struct
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
from loguru import logger

from ghf_lattice.core.covariance import CovarianceMatrix, GammaLike, gamma_array
from ghf_lattice.model.hubbard import ModelSpec
from ghf_lattice.validation.validators import CovarianceValidationError, validate_covariance

MAGIC = b"GHFCM1"
FORMAT_VERSION = 1
HEADER = struct.Struct("<6sHIIIBB5d")
CHECKPOINT_SUFFIX = ".ghfcm"

_BOUNDARIES = ("periodic", "open")
_FORMS = ("symmetric", "plain")


class CheckpointError(ValueError):
    """Unreadable, mismatched or corrupted checkpoint file."""


@dataclass(frozen=True)
class CheckpointHeader:
    """Metadata stored in front of the covariance-matrix payload."""

    modes: int
    n_h: int
    n_v: int
    boundary: str = "periodic"
    interaction_form: str = "symmetric"
    t: float = 1.0
    u: float = 0.0
    mu: float = 0.0
    v_t: float = 0.0
    created: float = field(default_factory=time.time)
    version: int = FORMAT_VERSION

    @classmethod
    def from_spec(cls, spec: ModelSpec, created: Optional[float] = None) -> "CheckpointHeader":
        return cls(
            modes=spec.n_modes,
            n_h=spec.n_h,
            n_v=spec.n_v,
            boundary=spec.boundary,
            interaction_form=spec.interaction_form,
            t=spec.t,
            u=spec.u,
            mu=spec.mu,
            v_t=spec.v_t,
            created=time.time() if created is None else created,
        )

    def to_spec(self) -> ModelSpec:
        return ModelSpec(
            n_h=self.n_h,
            n_v=self.n_v,
            boundary=self.boundary,
            interaction_form=self.interaction_form,
            t=self.t,
            u=self.u,
            mu=self.mu,
            v_t=self.v_t,
        )

    def pack(self) -> bytes:
        return HEADER.pack(
            MAGIC,
            self.version,
            self.modes,
            self.n_h,
            self.n_v,
            _BOUNDARIES.index(self.boundary),
            _FORMS.index(self.interaction_form),
            self.t,
            self.u,
            self.mu,
            self.v_t,
            self.created,
        )

    @classmethod
    def unpack(cls, raw: bytes) -> "CheckpointHeader":
        """Parse the fixed-width header.

        Raises:
            CheckpointError: On a short buffer, wrong magic, unknown version or flag
        """
        if len(raw) < HEADER.size:
            raise CheckpointError(
                f"Truncated header: {len(raw)} bytes, expected {HEADER.size}"
            )
        magic, version, modes, n_h, n_v, boundary, form, t, u, mu, v_t, created = HEADER.unpack(
            raw[: HEADER.size]
        )
        if magic != MAGIC:
            raise CheckpointError(f"Bad magic {magic!r}, expected {MAGIC!r}")
        if version != FORMAT_VERSION:
            raise CheckpointError(
                f"Unsupported checkpoint version {version}, expected {FORMAT_VERSION}"
            )
        if boundary >= len(_BOUNDARIES) or form >= len(_FORMS):
            raise CheckpointError(f"Unknown boundary/form flags ({boundary}, {form})")
        return cls(
            modes=modes,
            n_h=n_h,
            n_v=n_v,
            boundary=_BOUNDARIES[boundary],
            interaction_form=_FORMS[form],
            t=t,
            u=u,
            mu=mu,
            v_t=v_t,
            created=created,
            version=version,
        )


def checkpoint_write(
    gamma: GammaLike, header: CheckpointHeader, path: Union[str, Path]
) -> Path:
    """Write Γ after its header.

    Raises:
        CovarianceValidationError: If Γ is not a physical covariance matrix
        CheckpointError: If Γ does not have 2·header.modes rows
    """
    g = gamma_array(gamma)
    validate_covariance(g, context="checkpoint payload")
    if g.shape[0] != 2 * header.modes:
        raise CheckpointError(
            f"Dimension mismatch: Γ is {g.shape[0]}×{g.shape[1]}, header says M={header.modes}"
        )

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = np.ascontiguousarray(g, dtype="<f8").tobytes(order="C")
    path.write_bytes(header.pack() + payload)
    logger.debug(f"Wrote checkpoint {path} (M={header.modes})")
    return path


def load_checkpoint(path: Union[str, Path]) -> Tuple[CheckpointHeader, CovarianceMatrix]:
    """Read a checkpoint and return its header together with the validated Γ.

    Raises:
        CheckpointError: Missing file, bad header, payload size not matching the header,
            or a payload that fails the antisymmetry/physicality checks
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError as exc:
        raise CheckpointError(f"Checkpoint not found: {path}") from exc

    header = CheckpointHeader.unpack(raw)
    dim = 2 * header.modes
    payload = raw[HEADER.size :]
    expected = dim * dim * 8
    if len(payload) != expected:
        raise CheckpointError(
            f"Dimension mismatch: header M={header.modes} needs {expected} payload bytes, "
            f"file has {len(payload)}"
        )

    g = np.frombuffer(payload, dtype="<f8").reshape(dim, dim).astype(np.float64)
    try:
        validate_covariance(g, context=f"checkpoint {path.name}")
    except CovarianceValidationError as exc:
        raise CheckpointError(
            f"Corrupted payload in {path}: {exc.report.get_failure_summary()}"
        ) from exc
    return header, CovarianceMatrix(g)


def checkpoint_read(path: Union[str, Path]) -> CovarianceMatrix:
    """Validated Γ stored in ``path``; see ``load_checkpoint`` for the errors."""
    return load_checkpoint(path)[1]
