"""
Prediction vs. Simulation
=========================

Runs the discrete surrogate for a spec, fits the decay rate and compares it
with gamma2 / (1 + N). The convergence study repeats the comparison on grids
refined by factors of two.
"""

import logging
from typing import List, Optional, Tuple

from ..discretize.discrete_model import build_discrete
from ..dynamics.integrator import DEFAULT_NORM_TOLERANCE, integrate
from ..dynamics.models import Trajectory
from ..errors import ConstantTrajectoryError
from ..model.models import CascadeSpec
from ..model.rates import predict_rates
from .models import RateReport
from .rate_fitting import WINDOW_END, fit_decay_rate

logger = logging.getLogger(__name__)

CONVERGENCE_TOLERANCE = 0.01

# Runs stop this far past the default fit window
RUN_MARGIN = 1.2


def default_t_max(spec: CascadeSpec, recurrence_time: float) -> float:
    """End time covering the default fit window, kept below half the recurrence time."""
    rate = predict_rates(spec).gamma2_modified
    limit = 0.49 * recurrence_time
    if rate <= 0:
        return 0.45 * recurrence_time
    return min(RUN_MARGIN * WINDOW_END / rate, limit)


def simulate_spec(spec: CascadeSpec, t_max: Optional[float] = None,
                  dt: Optional[float] = None, sample_every: int = 10,
                  norm_tolerance: float = DEFAULT_NORM_TOLERANCE,
                  allow_recurrence: bool = False) -> Trajectory:
    """Discretize ``spec`` and integrate it from the initial state."""
    model = build_discrete(spec)
    if t_max is None:
        t_max = default_t_max(spec, model.recurrence_time)
    return integrate(model, t_max, dt, sample_every, norm_tolerance=norm_tolerance,
                     allow_recurrence=allow_recurrence)


def compare(spec: CascadeSpec, traj: Trajectory,
            window: Optional[Tuple[float, float]] = None) -> RateReport:
    """Fit ``traj`` (produced from ``build_discrete(spec)``) and report against the prediction."""
    prediction = predict_rates(spec)
    fit = fit_decay_rate(traj, window, prediction.gamma2_modified)
    if fit.constant:
        raise ConstantTrajectoryError(diagnostics={"window": fit.window})

    report = RateReport.build(prediction, fit, traj.metadata())
    logger.info(f"gamma2={prediction.gamma2:.6g} N={prediction.n_factor:.6g} "
                f"predicted={prediction.gamma2_modified:.6g} fitted={fit.rate:.6g} "
                f"rel_err={report.relative_error:.3g}")
    return report


def convergence_study(spec: CascadeSpec, refinements: int, t_max: Optional[float] = None,
                      dt: Optional[float] = None, sample_every: int = 10) -> List[RateReport]:
    """
    Compare ``spec`` on ``refinements`` grids, doubling both mode counts each step.

    The final report's ``convergence_flag`` is set when the last two fitted
    rates differ by less than 1%.
    """
    if refinements < 2:
        raise ValueError("convergence study needs at least 2 refinements")

    reports: List[RateReport] = []
    for step in range(refinements):
        refined = spec.refined(2 ** step) if step else spec
        logger.info(f"Refinement {step + 1}/{refinements}: n1={refined.grid1.count}, "
                    f"n0={refined.grid0.count}")
        traj = simulate_spec(refined, t_max=t_max, dt=dt, sample_every=sample_every)
        reports.append(compare(refined, traj))

    previous, last = reports[-2].fit.rate, reports[-1].fit.rate
    converged = abs(last - previous) < CONVERGENCE_TOLERANCE * abs(last)
    if not converged:
        logger.warning(f"Fitted rate not converged: {previous:.6g} -> {last:.6g}")
    reports[-1] = reports[-1].flagged(converged)
    return reports


def estimate_gamma1(report: RateReport) -> float:
    """Rough estimate Gamma1 ~ N * Gamma2 of the level-1 decay rate."""
    prediction = report.prediction
    estimate = prediction.n_factor * prediction.gamma2_modified
    logger.debug(f"Rough Gamma1 estimate N * Gamma2 = {estimate:.6g}")
    return estimate
