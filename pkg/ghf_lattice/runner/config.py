"""Declarative run configuration read from TOML files."""

from pathlib import Path
from typing import List, Literal, Optional, Union

import toml
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ghf_lattice.config.paths import RUNS_DIR
from ghf_lattice.config.solvers import DYNAMICS_DT, SNAPSHOT_STRIDE
from ghf_lattice.model.hubbard import ModelSpec
from ghf_lattice.observables.records import known_observables
from ghf_lattice.solvers.ground import GroundOptions
from ghf_lattice.solvers.thermal import ThermalOptions

Mode = Literal["ground", "thermal", "anneal", "dynamics", "sweep"]
StartState = Literal["ground", "mixed", "random", "checkpoint"]


class ConfigError(ValueError):
    """Invalid run configuration; ``key`` is the dotted path of the offending entry."""

    def __init__(self, message: str, key: str = ""):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


class _Section(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ThermalSettings(ThermalOptions):
    """Options of a single Gibbs solve plus its inverse temperature and starting state."""

    beta: Optional[float] = Field(None, gt=0, description="Inverse temperature")
    start: StartState = Field("random", description="Initial covariance matrix")
    checkpoint: Optional[Path] = Field(None, description="Checkpoint file to start from")

    def options(self) -> ThermalOptions:
        return ThermalOptions(**self.model_dump(include=set(ThermalOptions.model_fields)))


class AnnealSettings(ThermalSettings):
    """β sweep bounds; ``start`` selects the seed of the first point."""

    beta_start: Optional[float] = Field(None, ge=0, description="First inverse temperature")
    beta_end: Optional[float] = Field(None, ge=0, description="Last inverse temperature")
    start: StartState = Field("ground", description="Initial covariance matrix")


class DynamicsSettings(_Section):
    """Real-time run: static evolution or a linear ramp of one parameter."""

    t_final: Optional[float] = Field(None, ge=0, description="Evolution time (per ramp leg)")
    dt: float = Field(DYNAMICS_DT, gt=0, description="Time step")
    parameter: Optional[Literal["u", "mu", "v_t"]] = Field(
        None, description="Ramped parameter; None evolves under the static model"
    )
    start: Optional[float] = Field(None, description="Ramp start value (defaults to the model)")
    end: Optional[float] = Field(None, description="Ramp end value")
    reverse: bool = Field(False, description="Run the mirrored ramp after the forward leg")
    initial: StartState = Field("ground", description="Initial covariance matrix")
    checkpoint: Optional[Path] = Field(None, description="Checkpoint file to start from")


class SweepSettings(_Section):
    """Cartesian parameter grid; omitted axes keep the model value."""

    mode: Literal["ground", "thermal", "anneal"] = Field("ground", description="Per-point solver")
    u: List[float] = Field(default_factory=list)
    mu: List[float] = Field(default_factory=list)
    v_t: List[float] = Field(default_factory=list)
    beta: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_beta(self):
        if any(b <= 0 for b in self.beta):
            raise ValueError("beta values must be positive")
        return self


class RunConfig(_Section):
    """Complete description of one CLI run."""

    mode: Optional[Mode] = Field(None, description="Run mode; set by the CLI subcommand")
    model: ModelSpec
    ground: GroundOptions = Field(default_factory=GroundOptions)
    thermal: ThermalSettings = Field(default_factory=ThermalSettings)
    anneal: AnnealSettings = Field(default_factory=AnnealSettings)
    dynamics: DynamicsSettings = Field(default_factory=DynamicsSettings)
    sweep: SweepSettings = Field(default_factory=SweepSettings)
    observables: List[str] = Field(default_factory=list)
    seeds: List[int] = Field(default_factory=lambda: [0], min_length=1)
    output: Path = Field(RUNS_DIR, description="Output directory")
    snapshot_stride: int = Field(SNAPSHOT_STRIDE, ge=1)
    checkpoints: bool = Field(False, description="Write final covariance matrices")
    allow_unconverged: bool = Field(False, description="Exit 0 even if a solver fails")


def _required(config: RunConfig) -> None:
    """Mode-specific keys that have no default."""
    mode = config.mode
    if mode is None:
        raise ConfigError("no run mode given", key="mode")
    unknown = [name for name in config.observables if name not in known_observables()]
    if unknown:
        raise ConfigError(f"unknown names {unknown}", key="observables")
    sweep_mode = config.sweep.mode if mode == "sweep" else None
    if mode == "thermal" or sweep_mode == "thermal":
        if config.thermal.beta is None and not (sweep_mode and config.sweep.beta):
            raise ConfigError("required for thermal runs", key="thermal.beta")
    if mode == "anneal" or sweep_mode == "anneal":
        for key in ("beta_start", "beta_end"):
            if getattr(config.anneal, key) is None:
                raise ConfigError("required for anneal runs", key=f"anneal.{key}")
    if mode == "dynamics":
        if config.dynamics.t_final is None:
            raise ConfigError("required for dynamics runs", key="dynamics.t_final")
        if config.dynamics.parameter is not None and config.dynamics.end is None:
            raise ConfigError("required when a parameter is ramped", key="dynamics.end")
    if mode == "sweep" and not any(
        (config.sweep.u, config.sweep.mu, config.sweep.v_t, config.sweep.beta)
    ):
        raise ConfigError("a sweep needs at least one of u, mu, v_t, beta", key="sweep")
    for section, start in (
        ("thermal", config.thermal),
        ("anneal", config.anneal),
    ):
        if start.start == "checkpoint" and start.checkpoint is None:
            raise ConfigError("required when start='checkpoint'", key=f"{section}.checkpoint")
    if config.dynamics.initial == "checkpoint" and config.dynamics.checkpoint is None:
        raise ConfigError("required when initial='checkpoint'", key="dynamics.checkpoint")


def parse_config(data: dict, mode: Optional[str] = None) -> RunConfig:
    """Validate a configuration mapping.

    Args:
        data: Parsed TOML content
        mode: Run mode that overrides ``data["mode"]`` (the CLI subcommand)

    Raises:
        ConfigError: Naming the first offending dotted key
    """
    data = dict(data)
    if mode is not None:
        data["mode"] = mode
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        key = ".".join(str(part) for part in error["loc"])
        raise ConfigError(error["msg"], key=key) from exc
    _required(config)
    return config


def load_config(path: Union[str, Path], mode: Optional[str] = None) -> RunConfig:
    """Read and validate a TOML run configuration.

    Raises:
        ConfigError: If the file cannot be read or parsed, or a key is invalid
    """
    path = Path(path)
    try:
        data = toml.load(path)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except toml.TomlDecodeError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc

    config = parse_config(data, mode=mode)
    logger.info(f"Loaded {config.mode} configuration from {path}")
    return config


def with_overrides(
    config: RunConfig,
    seed: Optional[int] = None,
    output: Optional[Path] = None,
) -> RunConfig:
    """Apply CLI flag overrides on top of the file configuration."""
    update = {}
    if seed is not None:
        update["seeds"] = [seed]
    if output is not None:
        update["output"] = Path(output)
    return config.model_copy(update=update) if update else config
