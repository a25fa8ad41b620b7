"""Command-line entry point: ``ghf <mode> --config run.toml``."""

import time
from pathlib import Path
from typing import Optional

import typer
from loguru import logger

from ghf_lattice.config.settings import LOG_LEVEL
from ghf_lattice.oracle.suite import run_oracle_suite
from ghf_lattice.runner.checkpoint import CheckpointError
from ghf_lattice.runner.config import ConfigError, load_config, with_overrides
from ghf_lattice.runner.jobs import execute, resolve_workers, write_artifacts
from ghf_lattice.utils.logging import setup_logger
from ghf_lattice.validation.validators import CovarianceValidationError

app = typer.Typer(help="Generalized Hartree-Fock solvers for the Hubbard model.")

EXIT_INVALID = 1
EXIT_UNCONVERGED = 3

ConfigOption = typer.Option(..., "--config", "-c", help="TOML run configuration")
SeedOption = typer.Option(None, "--seed", help="Override the configured seeds with one seed")
OutOption = typer.Option(None, "--out", help="Output directory")
ThreadsOption = typer.Option(
    None, "--threads", help="Parallel workers (-1 = all cores); defaults to GHF_MAX_WORKERS"
)


@app.callback()
def main(
    log_level: str = typer.Option(LOG_LEVEL, "--log-level", help="Logging level"),
):
    """Configure logging for every subcommand."""
    setup_logger(level=log_level.upper())


def _run_mode(
    mode: str,
    config_path: Path,
    seed: Optional[int],
    out: Optional[Path],
    threads: Optional[int],
) -> None:
    logger.info(f"Running {mode} job...")

    logger.info("Step 1/3: Loading configuration...")
    try:
        config = with_overrides(load_config(config_path, mode=mode), seed=seed, output=out)
        n_jobs = resolve_workers(threads)
    except ConfigError as exc:
        logger.error(f"Invalid configuration: {exc}")
        raise typer.Exit(code=EXIT_INVALID)

    logger.info("Step 2/3: Solving...")
    start = time.perf_counter()
    try:
        outcome = execute(config, n_jobs)
    except (ConfigError, CheckpointError) as exc:
        logger.error(f"Invalid input: {exc}")
        raise typer.Exit(code=EXIT_INVALID)
    except CovarianceValidationError as exc:
        logger.error(f"{exc}\n{exc.report.get_failure_summary()}")
        raise typer.Exit(code=EXIT_INVALID)

    logger.info("Step 3/3: Writing artifacts...")
    out_dir = write_artifacts(config, outcome, time.perf_counter() - start)

    if not outcome.converged:
        if config.allow_unconverged:
            logger.warning(f"Some solves did not converge; see the converged column in {out_dir}")
        else:
            logger.error(f"Some solves did not converge; results kept in {out_dir}")
            raise typer.Exit(code=EXIT_UNCONVERGED)

    logger.success(f"{mode.capitalize()} job complete: {out_dir}")


@app.command()
def ground(
    config: Path = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    threads: Optional[int] = ThreadsOption,
):
    """Minimize the energy over pure Gaussian states (imaginary-time flow)."""
    _run_mode("ground", config, seed, out, threads)


@app.command()
def thermal(
    config: Path = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    threads: Optional[int] = ThreadsOption,
):
    """Solve the self-consistent Gibbs state at one inverse temperature."""
    _run_mode("thermal", config, seed, out, threads)


@app.command()
def anneal(
    config: Path = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    threads: Optional[int] = ThreadsOption,
):
    """Sweep the inverse temperature, seeding each solve with the previous one."""
    _run_mode("anneal", config, seed, out, threads)


@app.command()
def dynamics(
    config: Path = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    threads: Optional[int] = ThreadsOption,
):
    """Real-time evolution under a static or linearly ramped Hamiltonian."""
    _run_mode("dynamics", config, seed, out, threads)


@app.command()
def sweep(
    config: Path = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    threads: Optional[int] = ThreadsOption,
):
    """Run ground, thermal or anneal solves over a parameter grid in parallel."""
    _run_mode("sweep", config, seed, out, threads)


@app.command()
def check(
    seed: int = typer.Option(0, "--seed", help="Seed of the random test states"),
    samples: int = typer.Option(20, "--samples", min=1, help="Random states per rate check"),
):
    """Run the oracle suite against exact small-system references."""
    logger.info("Running oracle suite...")
    report = run_oracle_suite(seed=seed, samples=samples)
    if not report.success:
        for failure in report.failures:
            logger.error(str(failure))
        raise typer.Exit(code=EXIT_INVALID)


if __name__ == "__main__":
    app()
