"""
Closed-Form Rates
=================

Golden-rule rate of level 2, the Zeno factor N of the unstable target level
and the modified rate gamma2 / (1 + N). All rates are amplitude rates.
"""

import logging
import math

from .models import CascadeSpec, RatePrediction

logger = logging.getLogger(__name__)

# N within this distance of 1 counts as the boundary N = 1
BOUNDARY_SLACK = 1e-9


def golden_rule_rate(spec: CascadeSpec) -> float:
    """gamma2 = pi * rho1(E2) * |V12(E2)|**2."""
    return math.pi * spec.rho1(spec.e2) * spec.v12(spec.e2) ** 2


def level1_golden_rule_rate(spec: CascadeSpec) -> float:
    """Decay rate of a single |1 E2> state into the 0-continuum: pi * rho0(E2) * |V10(0)|**2."""
    return math.pi * spec.rho0(spec.e2) * spec.v10(0.0) ** 2


def zeno_factor(spec: CascadeSpec) -> float:
    """N = pi**2 * rho0(E2) * |V10(0)|**2 * rho1(E2), V10 taken at zero detuning."""
    return math.pi ** 2 * spec.rho0(spec.e2) * spec.v10(0.0) ** 2 * spec.rho1(spec.e2)


def predict_rates(spec: CascadeSpec) -> RatePrediction:
    """Assemble gamma2, N, Gamma2 = gamma2 / (1 + N) and the rough Gamma1 ~ N * Gamma2."""
    gamma2 = golden_rule_rate(spec)
    n_factor = zeno_factor(spec)
    gamma2_modified = gamma2 / (1.0 + n_factor)

    if n_factor >= 1.0 - BOUNDARY_SLACK:
        logger.warning(f"N = {n_factor:.6g} is outside N < 1 where the modified rate "
                       f"is derived; reporting it anyway")

    return RatePrediction(
        gamma2=gamma2,
        n_factor=n_factor,
        gamma2_modified=gamma2_modified,
        gamma1_estimate=n_factor * gamma2_modified,
        gamma1_single_state=level1_golden_rule_rate(spec),
        beyond_proved_regime=n_factor > 1.0 + BOUNDARY_SLACK,
    )
