"""
Decay-Rate Extraction
=====================

Unweighted least-squares line through ln p2(t) inside a time window. The
default window starts at 0.5 / Gamma to skip the quadratic short-time region
and ends at 2.5 / Gamma, below half the recurrence time of the surrogate.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.stats import linregress

from ..dynamics.models import Trajectory
from ..errors import FitError, NonExponentialWindowError, NonPositivePopulationError
from .models import FitResult

logger = logging.getLogger(__name__)

MIN_R_SQUARED = 0.99
MIN_POINTS = 3
SHORT_WINDOW_POINTS = 10

# Window edges in units of the predicted decay time 1 / Gamma
WINDOW_START = 0.5
WINDOW_END = 2.5


def default_window(traj: Trajectory, predicted_rate: Optional[float]) -> Tuple[float, float]:
    """[0.5 / Gamma, 2.5 / Gamma] clipped to the trajectory and below half the recurrence time."""
    t_first, t_last = traj.span
    t_hi = min(t_last, 0.5 * traj.recurrence_time)
    if not predicted_rate or predicted_rate <= 0:
        return t_first, t_hi

    lo = max(t_first, WINDOW_START / predicted_rate)
    hi = min(t_hi, WINDOW_END / predicted_rate)
    if hi <= lo:
        raise FitError("default fit window is empty",
                       {"t_lo": lo, "t_hi": hi, "span": traj.span})
    return lo, hi


def fit_decay_rate(traj: Trajectory, window: Optional[Tuple[float, float]] = None,
                   predicted_rate: Optional[float] = None) -> FitResult:
    """
    Fit the amplitude rate of ``traj`` over ``window``.

    Args:
        traj: sampled trajectory
        window: (t_lo, t_hi); defaults to ``default_window(traj, predicted_rate)``
        predicted_rate: Gamma used for the default window

    Returns:
        FitResult; a trajectory that does not move returns rate 0 with
        ``constant`` set
    """
    if window is None:
        window = default_window(traj, predicted_rate)
    t_lo, t_hi = float(window[0]), float(window[1])

    t_first, t_last = traj.span
    slack = 1e-9 * max(1.0, abs(t_last))
    if not t_lo < t_hi:
        raise FitError("fit window must satisfy t_lo < t_hi", {"t_lo": t_lo, "t_hi": t_hi})
    if t_lo < t_first - slack or t_hi > t_last + slack:
        raise FitError("fit window outside trajectory span",
                       {"t_lo": t_lo, "t_hi": t_hi, "span": traj.span})

    mask = (traj.times >= t_lo - slack) & (traj.times <= t_hi + slack)
    times = traj.times[mask]
    p2 = traj.p2[mask]
    if times.size < MIN_POINTS:
        raise FitError("too few samples in fit window",
                       {"n_points": int(times.size), "required": MIN_POINTS})
    if times.size < SHORT_WINDOW_POINTS:
        logger.warning(f"Fit window [{t_lo:.4g}, {t_hi:.4g}] holds only {times.size} samples")

    if np.any(p2 <= 0):
        raise NonPositivePopulationError("survival probability not positive in fit window",
                                         {"t": float(times[np.argmax(p2 <= 0)])})

    log_p2 = np.log(p2)
    if np.ptp(log_p2) == 0.0:
        logger.debug("Survival probability constant over the fit window")
        return FitResult(rate=0.0, window=(t_lo, t_hi), r_squared=1.0, residual_rms=0.0,
                         n_points=int(times.size), constant=True)

    fit = linregress(times, log_p2)
    r_squared = float(fit.rvalue ** 2)
    residuals = log_p2 - (fit.intercept + fit.slope * times)
    residual_rms = float(math.sqrt(np.mean(residuals ** 2)))
    diagnostics = {
        "r_squared": round(r_squared, 6),
        "residual_rms": residual_rms,
        "window": (t_lo, t_hi),
        "n_points": int(times.size),
    }

    if r_squared < MIN_R_SQUARED:
        raise NonExponentialWindowError("non-exponential window", diagnostics)
    if fit.slope > 0:
        raise NonExponentialWindowError("survival probability grows in fit window",
                                        diagnostics)

    result = FitResult(
        rate=float(-fit.slope / 2.0),
        window=(t_lo, t_hi),
        r_squared=r_squared,
        residual_rms=residual_rms,
        n_points=int(times.size),
        rate_stderr=float(fit.stderr / 2.0),
    )
    logger.debug(f"Fitted rate {result.rate:.6g} on [{t_lo:.4g}, {t_hi:.4g}], "
                 f"r2={r_squared:.6f}")
    return result
