"""Batch front end: run configurations, checkpoints, result files and job execution."""

from ghf_lattice.runner.checkpoint import (
    CheckpointError,
    CheckpointHeader,
    checkpoint_read,
    checkpoint_write,
    load_checkpoint,
)
from ghf_lattice.runner.config import ConfigError, RunConfig, load_config, parse_config
from ghf_lattice.runner.jobs import RunOutcome, execute, plan_points, run, write_artifacts
from ghf_lattice.runner.records import RESULT_COLUMNS, results_frame

__all__ = [
    "CheckpointError",
    "CheckpointHeader",
    "ConfigError",
    "RESULT_COLUMNS",
    "RunConfig",
    "RunOutcome",
    "checkpoint_read",
    "checkpoint_write",
    "execute",
    "load_checkpoint",
    "load_config",
    "parse_config",
    "plan_points",
    "results_frame",
    "run",
    "write_artifacts",
]
