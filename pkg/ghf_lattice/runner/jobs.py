"""
Execution of run configurations.

Every mode is broken into independent points (one per seed, and per grid point for sweeps).
Points run through a joblib work queue with BLAS threads pinned to one per worker; the parent
process gathers the results and is the only writer of artifacts.
"""

import itertools
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed
from loguru import logger
from numpy.typing import NDArray
from threadpoolctl import threadpool_limits

from ghf_lattice.config.settings import MAX_WORKERS
from ghf_lattice.core.covariance import (
    CovarianceMatrix,
    entropy,
    random_mixed_cm,
    random_pure_cm,
)
from ghf_lattice.model.hamiltonian import MajoranaHamiltonian, particle_number
from ghf_lattice.model.hubbard import ModelSpec, build_hubbard
from ghf_lattice.observables.correlators import pairing
from ghf_lattice.observables.records import FIELD_OBSERVABLES, measure
from ghf_lattice.runner.checkpoint import (
    CHECKPOINT_SUFFIX,
    CheckpointError,
    CheckpointHeader,
    checkpoint_write,
    load_checkpoint,
)
from ghf_lattice.runner.config import ConfigError, RunConfig
from ghf_lattice.runner.records import (
    base_row,
    extra_columns,
    field_key,
    results_frame,
    write_fields,
    write_results,
    write_summary,
)
from ghf_lattice.solvers.dynamics import (
    RampProtocol,
    StaticHamiltonian,
    Trajectory,
    evolve,
    run_ramp,
)
from ghf_lattice.solvers.ground import GroundResult, minimize_energy
from ghf_lattice.solvers.thermal import AnnealAborted, ThermalResult, anneal, gibbs_fixed_point


@dataclass(frozen=True)
class Point:
    """One independent unit of work."""

    mode: str
    spec: ModelSpec
    seed: int
    beta: Optional[float] = None

    @property
    def tag(self) -> str:
        spec = self.spec
        beta = "" if self.beta is None else f"_b{self.beta:g}"
        return f"{self.mode}_u{spec.u:g}_mu{spec.mu:g}_vt{spec.v_t:g}{beta}_s{self.seed}"


@dataclass
class PointOutcome:
    """Rows, fields and final state produced by one point."""

    point: Point
    rows: List[dict]
    fields: Dict[str, NDArray] = field(default_factory=dict)
    final_gamma: Optional[CovarianceMatrix] = None
    converged: bool = True


@dataclass
class RunOutcome:
    """Everything a run produced, already in canonical order."""

    rows: List[dict]
    fields: Dict[str, NDArray]
    converged: bool
    checkpoints: List[Path] = field(default_factory=list)


def _fill(row: dict, gamma: CovarianceMatrix, config: RunConfig, spec: ModelSpec) -> dict:
    """Base observables plus the requested extra scalars of ``gamma``."""
    g = gamma.gamma
    row["particle_number"] = particle_number(g)
    row["pairing"] = pairing(g)
    if np.isnan(row["entropy"]):
        row["entropy"] = entropy(g)
    extras = extra_columns(config.observables)
    if extras:
        row.update(measure(g, spec.lattice, extras).scalars)
    return row


def _fields(row: dict, gamma: CovarianceMatrix, config: RunConfig, spec: ModelSpec) -> dict:
    names = [name for name in config.observables if name in FIELD_OBSERVABLES]
    if not names:
        return {}
    record = measure(gamma, spec.lattice, names)
    return {field_key(name, row): values for name, values in record.fields.items()}


def _ground_state(hamiltonian: MajoranaHamiltonian, config: RunConfig, seed: int) -> GroundResult:
    """Ground-state flow from the seeded random pure start."""
    return minimize_energy(hamiltonian, random_pure_cm(hamiltonian.modes, seed), config.ground)


def _checkpoint_state(path: Path, spec: ModelSpec) -> CovarianceMatrix:
    header, gamma = load_checkpoint(path)
    if header.modes != spec.n_modes:
        raise CheckpointError(
            f"Checkpoint {path} holds M={header.modes} modes, the model has {spec.n_modes}"
        )
    logger.info(f"Starting from checkpoint {path} (u={header.u:g}, mu={header.mu:g})")
    return gamma


def _initial_state(
    kind: str,
    spec: ModelSpec,
    hamiltonian: MajoranaHamiltonian,
    config: RunConfig,
    seed: int,
    checkpoint: Optional[Path],
) -> Tuple[CovarianceMatrix, bool]:
    """Starting covariance matrix and whether producing it converged."""
    if kind == "ground":
        result = _ground_state(hamiltonian, config, seed)
        return result.gamma, result.converged
    if kind == "mixed":
        return CovarianceMatrix(np.zeros((hamiltonian.dim, hamiltonian.dim))), True
    if kind == "random":
        return random_mixed_cm(spec.n_modes, seed), True
    return _checkpoint_state(checkpoint, spec), True


def _run_ground(point: Point, config: RunConfig) -> PointOutcome:
    result = _ground_state(build_hubbard(point.spec), config, point.seed)
    row = base_row("ground", point.spec, point.seed)
    row.update(
        energy=result.energy,
        free_energy=result.energy,
        residual=result.residual,
        steps=result.steps,
        converged=result.converged,
    )
    _fill(row, result.gamma, config, point.spec)
    return PointOutcome(
        point,
        [row],
        _fields(row, result.gamma, config, point.spec),
        result.gamma,
        result.converged,
    )


def _thermal_row(mode: str, point: Point, result: ThermalResult, config: RunConfig) -> dict:
    row = base_row(mode, point.spec, point.seed)
    row.update(
        beta=result.beta,
        energy=result.energy,
        entropy=result.entropy,
        free_energy=result.free_energy,
        residual=max(result.commutator_residual, result.stationarity_residual),
        steps=result.iters,
        converged=result.converged,
    )
    return _fill(row, result.gamma, config, point.spec)


def _run_thermal(point: Point, config: RunConfig) -> PointOutcome:
    settings = config.thermal
    hamiltonian = build_hubbard(point.spec)
    start, ok = _initial_state(
        settings.start, point.spec, hamiltonian, config, point.seed, settings.checkpoint
    )
    result = gibbs_fixed_point(hamiltonian, point.beta, start, settings.options())
    row = _thermal_row("thermal", point, result, config)
    return PointOutcome(
        point,
        [row],
        _fields(row, result.gamma, config, point.spec),
        result.gamma,
        result.converged and ok,
    )


def _run_anneal(point: Point, config: RunConfig) -> PointOutcome:
    settings = config.anneal
    hamiltonian = build_hubbard(point.spec)
    start, ok = _initial_state(
        settings.start, point.spec, hamiltonian, config, point.seed, settings.checkpoint
    )
    converged = ok
    try:
        results = anneal(
            hamiltonian,
            settings.beta_start,
            settings.beta_end,
            settings.options(),
            start,
            progress=False,
        )
    except AnnealAborted as exc:
        logger.warning(f"{point.tag}: {exc}; keeping {len(exc.results)} converged points")
        results, converged = exc.results, False

    rows, fields = [], {}
    for result in results:
        row = _thermal_row("anneal", point, result, config)
        rows.append(row)
        fields.update(_fields(row, result.gamma, config, point.spec))
    final = results[-1].gamma if results else None
    return PointOutcome(point, rows, fields, final, converged)


def _trajectory(point: Point, config: RunConfig) -> Tuple[Trajectory, bool]:
    settings = config.dynamics
    spec = point.spec
    scalars = extra_columns(config.observables)
    if "entropy" not in scalars:
        scalars = [*scalars, "entropy"]
    common = dict(
        dt=settings.dt,
        snapshot_stride=config.snapshot_stride,
        observables=scalars,
    )

    if settings.parameter is None:
        hamiltonian = build_hubbard(spec)
        gamma0, ok = _initial_state(
            settings.initial, spec, hamiltonian, config, point.seed, settings.checkpoint
        )
        trajectory = evolve(
            StaticHamiltonian(hamiltonian),
            gamma0,
            settings.t_final,
            lattice=spec.lattice,
            **common,
        )
        return trajectory, ok

    start = getattr(spec, settings.parameter) if settings.start is None else settings.start
    protocol = RampProtocol(
        parameter=settings.parameter, start=start, end=settings.end, t_final=settings.t_final
    )
    spec_at_start = spec.model_copy(update={settings.parameter: start})
    gamma0, ok = _initial_state(
        settings.initial,
        spec_at_start,
        build_hubbard(spec_at_start),
        config,
        point.seed,
        settings.checkpoint,
    )
    trajectory = run_ramp(spec, protocol, gamma0, **common)
    if settings.reverse:
        backward = run_ramp(spec, protocol.reversed(), trajectory.final_gamma, **common)
        trajectory = trajectory.extend(backward)
    return trajectory, ok


def _run_dynamics(point: Point, config: RunConfig) -> PointOutcome:
    trajectory, ok = _trajectory(point, config)
    keep = set(config.observables)
    rows = []
    for step, record in enumerate(trajectory.records.to_dict("records")):
        row = base_row("dynamics", point.spec, point.seed)
        row.update({key: value for key, value in record.items() if key in keep or key in row})
        row["steps"] = step
        rows.append(row)

    fields = {}
    snapshot_rows = {row["time"]: row for row in rows}
    for t, gamma in trajectory.snapshots.items():
        row = snapshot_rows.get(t)
        if row is not None:
            fields.update(_fields(row, gamma, config, point.spec))
    return PointOutcome(point, rows, fields, trajectory.final_gamma, ok)


_RUNNERS = {
    "ground": _run_ground,
    "thermal": _run_thermal,
    "anneal": _run_anneal,
    "dynamics": _run_dynamics,
}


def _run_point(point: Point, config: RunConfig) -> PointOutcome:
    with threadpool_limits(limits=1):
        return _RUNNERS[point.mode](point, config)


def plan_points(config: RunConfig) -> List[Point]:
    """Independent points of a run; sweeps expand the Cartesian product of their axes."""
    if config.mode != "sweep":
        beta = config.thermal.beta if config.mode == "thermal" else None
        return [Point(config.mode, config.model, seed, beta) for seed in config.seeds]

    sweep = config.sweep
    model = config.model
    axes = (
        sweep.u or [model.u],
        sweep.mu or [model.mu],
        sweep.v_t or [model.v_t],
        (sweep.beta or [config.thermal.beta]) if sweep.mode == "thermal" else [None],
        config.seeds,
    )
    points = []
    for u, mu, v_t, beta, seed in itertools.product(*axes):
        spec = model.model_copy(update={"u": u, "mu": mu, "v_t": v_t})
        points.append(Point(sweep.mode, spec, seed, beta))
    return points


def resolve_workers(threads: Optional[int]) -> int:
    """Worker count from ``--threads``, falling back to GHF_MAX_WORKERS."""
    if threads is None:
        return MAX_WORKERS
    if threads == 0 or threads < -1:
        raise ConfigError(f"must be positive or -1, got {threads}", key="threads")
    return threads


def execute(config: RunConfig, n_jobs: Optional[int] = None) -> RunOutcome:
    """Run every point of ``config`` and collect the outcome.

    Args:
        config: Validated run configuration
        n_jobs: Worker count; None uses GHF_MAX_WORKERS

    Returns:
        RunOutcome with rows in canonical order
    """
    points = plan_points(config)
    workers = resolve_workers(n_jobs)
    logger.info(f"Running {len(points)} {config.mode} point(s) on {workers} worker(s)")

    if len(points) == 1 or workers == 1:
        outcomes = [_run_point(point, config) for point in points]
    else:
        outcomes = Parallel(n_jobs=workers)(delayed(_run_point)(point, config) for point in points)

    rows, fields = [], {}
    for outcome in outcomes:
        if not outcome.converged:
            logger.warning(f"{outcome.point.tag} did not converge")
        rows.extend(outcome.rows)
        fields.update(outcome.fields)

    checkpoints = []
    if config.checkpoints:
        for outcome in outcomes:
            if outcome.final_gamma is None:
                continue
            path = config.output / "checkpoints" / f"{outcome.point.tag}{CHECKPOINT_SUFFIX}"
            header = CheckpointHeader.from_spec(outcome.point.spec)
            checkpoints.append(checkpoint_write(outcome.final_gamma, header, path))

    return RunOutcome(
        rows=rows,
        fields=fields,
        converged=all(outcome.converged for outcome in outcomes),
        checkpoints=checkpoints,
    )


def write_artifacts(config: RunConfig, outcome: RunOutcome, wall_time: float) -> Path:
    """Write results.csv, fields.npz and summary.yaml below ``config.output``."""
    out_dir = Path(config.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    frame = results_frame(outcome.rows, config.observables)
    write_results(frame, out_dir)
    write_fields(outcome.fields, out_dir)
    write_summary(
        out_dir,
        config.mode,
        frame,
        outcome.converged,
        wall_time,
        config.model_dump(mode="json"),
    )
    return out_dir


def run(config: RunConfig, n_jobs: Optional[int] = None) -> RunOutcome:
    """Execute a configuration and write its artifacts."""
    start = time.perf_counter()
    outcome = execute(config, n_jobs)
    write_artifacts(config, outcome, time.perf_counter() - start)
    return outcome
