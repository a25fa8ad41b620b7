"""
Self-check suite: every solver equation against an independent small-system reference.

Run by ``ghf check``. Each check produces a ``CheckResult``; the suite passes when all do.
"""

from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np
from loguru import logger

from ghf_lattice.core.covariance import random_mixed_cm, random_pure_cm, vacuum_cm
from ghf_lattice.core.wick import wick_four
from ghf_lattice.model.hamiltonian import energy
from ghf_lattice.model.hubbard import ModelSpec, build_hubbard
from ghf_lattice.oracle.fock import (
    FockOperator,
    anticommutator_errors,
    ed_ground,
    fock_hamiltonian,
    fock_hubbard,
    majorana_operators,
)
from ghf_lattice.oracle.free_fermion import free_fermion_reference
from ghf_lattice.oracle.gaussian import (
    fock_covariance,
    gaussian_density_operator,
    rate_check_imag,
    rate_check_real,
)
from ghf_lattice.solvers.ground import minimize_energy
from ghf_lattice.solvers.thermal import gibbs_fixed_point


@dataclass
class CheckResult:
    """One oracle comparison: ``passed`` iff value ≤ tolerance."""

    name: str
    value: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)

    def __str__(self) -> str:
        mark = "✓" if self.passed else "✗"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{mark} {self.name}: {self.value:.3e} ≤ {self.tolerance:.0e}{extra}"


@dataclass
class SuiteReport:
    """All oracle checks of one run."""

    checks: List[CheckResult] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def __str__(self) -> str:
        passed = len(self.checks) - len(self.failures)
        mark = "✓" if self.success else "✗"
        return f"{mark} Oracle suite: {passed}/{len(self.checks)} checks passed"


def _small_hubbard(u: float, **extra) -> ModelSpec:
    return ModelSpec(n_h=2, n_v=2, u=u, **extra)


def _check_car() -> CheckResult:
    return CheckResult("majorana_car_M6", max(anticommutator_errors(6)), 1e-12)


def _check_builder() -> CheckResult:
    errors = []
    for form in ("symmetric", "plain"):
        spec = _small_hubbard(-4.0, mu=0.3, v_t=0.1, interaction_form=form)
        diff = fock_hamiltonian(build_hubbard(spec)).matrix - fock_hubbard(spec).matrix
        errors.append(float(np.max(np.abs(diff.data), initial=0.0)))
    return CheckResult("majorana_vs_second_quantized", max(errors), 1e-12, "2x2, both forms")


def _check_free_ground(seed: int) -> CheckResult:
    spec = ModelSpec(n_h=4, n_v=4, u=0.0)
    hamiltonian = build_hubbard(spec)
    exact = free_fermion_reference(hamiltonian.T, e0=hamiltonian.e0).energy
    result = minimize_energy(hamiltonian, random_pure_cm(spec.n_modes, seed))
    gap = abs(result.energy - exact) / max(1.0, abs(exact))
    return CheckResult("free_fermion_ground_4x4", gap, 1e-9, f"E={result.energy:.10f}")


def _check_free_thermal() -> CheckResult:
    hamiltonian = build_hubbard(ModelSpec(n_h=4, n_v=4, u=0.0))
    worst = 0.0
    for beta in (0.5, 1.0, 2.0):
        exact = free_fermion_reference(hamiltonian.T, beta=beta, e0=hamiltonian.e0)
        result = gibbs_fixed_point(hamiltonian, beta)
        worst = max(worst, abs(result.free_energy - exact.free_energy))
    return CheckResult("free_fermion_thermal_4x4", worst, 1e-10, "β ∈ {0.5, 1, 2}")


def _check_variational(seed: int) -> List[CheckResult]:
    checks = []
    for u in (-4.0, 4.0):
        hamiltonian = build_hubbard(_small_hubbard(u))
        exact, _ = ed_ground(hamiltonian)
        result = minimize_energy(hamiltonian, random_pure_cm(hamiltonian.modes, seed))
        # Amount by which the variational energy undercuts the exact one
        violation = max(0.0, exact - result.energy)
        checks.append(
            CheckResult(
                f"variational_bound_u{u:+g}",
                violation,
                1e-10,
                f"gap E_gHF − E_ED = {result.energy - exact:.6f}",
            )
        )
    return checks


def _check_rates(seed: int, samples: int) -> List[CheckResult]:
    hamiltonian = build_hubbard(_small_hubbard(-4.0, mu=0.2))
    rng = np.random.default_rng(seed)
    seeds = rng.integers(2**31, size=samples)
    real = max(rate_check_real(hamiltonian, random_pure_cm(8, int(s))) for s in seeds)
    imag = max(rate_check_imag(hamiltonian, random_pure_cm(8, int(s))) for s in seeds)
    return [
        CheckResult("rate_real_2x2", real, 1e-8, f"{samples} random pure states"),
        CheckResult("rate_imag_2x2", imag, 1e-8, f"{samples} random pure states"),
    ]


def _check_density_operator(seed: int) -> List[CheckResult]:
    gamma = random_mixed_cm(4, seed)
    rho = gaussian_density_operator(gamma)
    second = float(np.max(np.abs(fock_covariance(rho) - gamma.gamma)))

    c = majorana_operators(4)
    worst = 0.0
    for quad in ((0, 1, 2, 3), (0, 4, 1, 5), (1, 2, 6, 7), (0, 3, 5, 6), (2, 3, 4, 7)):
        i, j, k, l = quad
        product = FockOperator(c[i] @ c[j] @ c[k] @ c[l], 4)
        worst = max(worst, abs(product.expectation(rho) - wick_four(gamma, *quad)))

    vacuum = fock_covariance(gaussian_density_operator(vacuum_cm(3)))
    vacuum_error = float(np.max(np.abs(vacuum - vacuum_cm(3).gamma)))
    return [
        CheckResult("density_second_moments", max(second, vacuum_error), 1e-10),
        CheckResult("density_wick_four", worst, 1e-9),
    ]


def _check_energy_functional(seed: int) -> CheckResult:
    hamiltonian = build_hubbard(_small_hubbard(-3.0, mu=0.1, interaction_form="plain"))
    gamma = random_mixed_cm(8, seed)
    rho = gaussian_density_operator(gamma)
    fock_value = fock_hamiltonian(hamiltonian).expectation(rho).real
    return CheckResult("energy_vs_fock", abs(fock_value - energy(hamiltonian, gamma)), 1e-10)


def run_oracle_suite(seed: int = 0, samples: int = 20) -> SuiteReport:
    """Run every oracle comparison.

    Args:
        seed: Seed for the random states
        samples: Random pure states per rate check

    Returns:
        SuiteReport with one CheckResult per comparison
    """
    report = SuiteReport()
    steps: List[Callable[[], object]] = [
        _check_car,
        _check_builder,
        lambda: _check_free_ground(seed),
        _check_free_thermal,
        lambda: _check_variational(seed),
        lambda: _check_rates(seed, samples),
        lambda: _check_density_operator(seed),
        lambda: _check_energy_functional(seed),
    ]
    for i, step in enumerate(steps, 1):
        outcome = step()
        batch = outcome if isinstance(outcome, list) else [outcome]
        for check in batch:
            logger.info(f"Check {i}/{len(steps)}: {check}")
        report.checks.extend(batch)

    if report.success:
        logger.success(str(report))
    else:
        logger.error(str(report))
    return report
