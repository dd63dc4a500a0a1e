"""
Verification Battery
====================

Built-in checks run by ``cascade-zeno validate``: unitarity, the resonant
two-state Rabi oscillation, golden-rule recovery, the Neumann term ratio and
the agreement of series, formula and simulation.
"""

import logging
import os
from dataclasses import dataclass
from typing import Callable, List, Mapping, Optional

import numpy as np
from rich.console import Console
from rich.table import Table

from ..analysis.comparison import compare, simulate_spec
from ..config.scenario_config import DT_OVERRIDE_ENV
from ..discretize.discrete_model import DiscreteModel, build_discrete
from ..dynamics.integrator import integrate
from ..errors import CascadeError
from ..model.models import flat_reference_spec
from ..model.rates import predict_rates
from ..series.neumann import neumann_term_ratio, resummed_rate

logger = logging.getLogger(__name__)

NORM_LIMIT = 1e-6
RABI_LIMIT = 1e-8
GOLDEN_RULE_LIMIT = 0.05
TERM_RATIO_LIMIT = 0.05
TERM_SPREAD_LIMIT = 0.10
TRIANGLE_LIMIT = 0.10


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def rabi_model(coupling: float = 0.1) -> DiscreteModel:
    """Level 2 coupled to one resonant mode; the 0-band mode is decoupled."""
    return DiscreteModel(
        e2=0.0,
        energies1=[0.0],
        couplings1=[coupling],
        weights1=[1.0],
        spacing1=1.0,
        energies0=[0.0],
        weights0=[0.0],
        spacing0=1.0,
    )


def check_unitarity(zeno_coupling: float, dt: Optional[float]) -> CheckResult:
    spec = flat_reference_spec(halfwidth=20.0, count=200, v10=zeno_coupling)
    traj = integrate(build_discrete(spec), 2.0, dt, norm_tolerance=1.0)
    drift = traj.max_norm_drift
    return CheckResult("unitarity", drift <= NORM_LIMIT,
                       f"max |norm - 1| = {drift:.3e} (dt={traj.dt:.4g})")


def check_rabi(dt: Optional[float]) -> CheckResult:
    coupling = 0.1
    traj = integrate(rabi_model(coupling), 10.0 / coupling, dt or 0.01,
                     allow_recurrence=True)
    deviation = float(np.max(np.abs(traj.p2 - np.cos(coupling * traj.times) ** 2)))
    return CheckResult("rabi pair", deviation <= RABI_LIMIT,
                       f"max |p2 - cos^2(g t)| = {deviation:.3e}")


def check_golden_rule(dt: Optional[float]) -> CheckResult:
    spec = flat_reference_spec(halfwidth=20.0, count=400, v10=0.0)
    report = compare(spec, simulate_spec(spec, dt=dt))
    return CheckResult("golden rule", report.relative_error <= GOLDEN_RULE_LIMIT,
                       f"fitted {report.fit.rate:.5g} vs gamma2 "
                       f"{report.prediction.gamma2:.5g} (rel_err {report.relative_error:.3g})")


def check_term_ratio(zeno_coupling: float) -> CheckResult:
    spec = flat_reference_spec(halfwidth=100.0, count=400, v10=zeno_coupling)
    model = build_discrete(spec)
    prediction = predict_rates(spec)
    n_factor = prediction.n_factor
    trial = prediction.gamma2_modified

    first = neumann_term_ratio(model, trial, 1, 1.0)
    if n_factor == 0:
        return CheckResult("term ratio", abs(first) == 0.0, f"T1/T0 = {abs(first):.3g}")

    ratios = [first] + [neumann_term_ratio(model, trial, n, 1.0) for n in (2, 3)]
    errors = [abs(ratio + n_factor) / n_factor for ratio in ratios]
    spread = max(abs(a - b) for a in ratios for b in ratios) / n_factor
    passed = max(errors) <= TERM_RATIO_LIMIT and spread <= TERM_SPREAD_LIMIT
    shown = ", ".join(f"T{n}/T{n - 1} = {r.real:.4g}{r.imag:+.2g}i"
                      for n, r in enumerate(ratios, start=1))
    return CheckResult("term ratio", passed, f"{shown}, -N = {-n_factor:.4g}")


def check_consistency(zeno_coupling: float, dt: Optional[float]) -> CheckResult:
    spec = flat_reference_spec(halfwidth=100.0, count=400, v10=zeno_coupling)
    formula = predict_rates(spec).gamma2_modified
    series = resummed_rate(build_discrete(spec), 3)
    fitted = compare(spec, simulate_spec(spec, dt=dt)).fit.rate

    rates = (formula, series, fitted)
    spread = max(abs(a - b) / min(a, b) for a in rates for b in rates)
    return CheckResult("consistency triangle", spread <= TRIANGLE_LIMIT,
                       f"formula {formula:.5g}, series {series:.5g}, fitted {fitted:.5g}")


def run_battery(zeno_coupling: float = 0.5,
                environ: Optional[Mapping[str, str]] = None) -> List[CheckResult]:
    """Run every check; a check that raises counts as failed."""
    environ = os.environ if environ is None else environ
    raw = environ.get(DT_OVERRIDE_ENV)
    dt = float(raw) if raw else None
    if dt is not None:
        logger.warning(f"{DT_OVERRIDE_ENV}={raw} applies to the dynamics checks")

    checks = [
        ("unitarity", lambda: check_unitarity(zeno_coupling, dt)),
        ("rabi pair", lambda: check_rabi(dt)),
        ("golden rule", lambda: check_golden_rule(dt)),
        ("term ratio", lambda: check_term_ratio(zeno_coupling)),
        ("consistency triangle", lambda: check_consistency(zeno_coupling, dt)),
    ]

    results = []
    for name, check in checks:
        results.append(run_check(name, check))
        logger.info(f"{name}: {'pass' if results[-1].passed else 'FAIL'}")
    return results


def run_check(name: str, check: Callable[[], CheckResult]) -> CheckResult:
    try:
        return check()
    except CascadeError as e:
        return CheckResult(name, False, str(e))


def render(results: List[CheckResult], console: Optional[Console] = None) -> None:
    """Print one pass/fail row per check."""
    console = console or Console()
    table = Table(title="cascade-zeno validation")
    table.add_column("check")
    table.add_column("result")
    table.add_column("detail")
    for result in results:
        status = "[green]pass[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(result.name, status, result.detail)
    console.print(table)


def all_passed(results: List[CheckResult]) -> bool:
    return all(result.passed for result in results)
