"""
Neumann Series of the Cascade Integral Equations
================================================

With a2 given, the band amplitudes solve a1 = I12 a2 + I10 a0, a0 = I01 a1,
so a1 = sum_n J**n I12 a2 with J = I10 I01. The level-2 equation then yields
the self-consistency condition

    -i sum_n V21 J**n I12 exp(-Gamma t) = -Gamma exp(-Gamma t)

Every term is a causal convolution chain driven by exp(-Gamma tau), so it
splits into a Markov part A_n exp(-Gamma tau) and transients oscillating at
the band edges that decay only like 1/(W tau). Successive Markov parts
differ by a factor close to -N for slowly varying profiles; the transients
do not, so ratios and the resummed rate use A_n, extracted as a Hann-weighted
mean of T_n(tau) exp(Gamma tau) over the late part of [0, t].

Time integrals use composite Simpson quadrature on a uniform sub-grid;
nested operators are applied innermost-first so every intermediate history
is computed once.
"""

import logging
import math
from typing import Callable, Optional

import numpy as np
from scipy.integrate import cumulative_simpson

from ..discretize.discrete_model import DiscreteModel
from ..errors import (
    DimensionMismatchError,
    QuadratureResolutionError,
    SeriesConvergenceError,
    SpecValidationError,
    TermUnderflowError,
)
from .models import Band, BandFunction, Channel, SeriesSettings

logger = logging.getLogger(__name__)

TINY = np.finfo(float).tiny


def quadrature_grid(model: DiscreteModel, t: float,
                    settings: Optional[SeriesSettings] = None,
                    steps: Optional[int] = None) -> np.ndarray:
    """Uniform sub-grid on [0, t] with an even number of intervals."""
    settings = settings or SeriesSettings()
    if not t > 0:
        raise QuadratureResolutionError("integration time must be positive", {"t": t})

    fastest = 2.0 * model.max_detuning
    if steps is not None:
        intervals = int(steps)
        if fastest > 0:
            resolution = intervals * 2.0 * math.pi / (fastest * t)
            if resolution < settings.min_points_per_period:
                raise QuadratureResolutionError(
                    "quadrature sub-grid under-resolves the fastest phase",
                    {"points_per_period": round(resolution, 3),
                     "required": settings.min_points_per_period})
    else:
        if settings.points_per_period < settings.min_points_per_period:
            raise QuadratureResolutionError(
                "quadrature sub-grid under-resolves the fastest phase",
                {"points_per_period": settings.points_per_period,
                 "required": settings.min_points_per_period})
        intervals = int(math.ceil(settings.points_per_period * fastest * t / (2.0 * math.pi)))
        intervals = max(intervals, settings.min_intervals)

    intervals = max(intervals, 2)
    if intervals % 2:
        intervals += 1
    return np.linspace(0.0, t, intervals + 1)


def _cumulative(integrand: np.ndarray, grid: np.ndarray) -> np.ndarray:
    real = cumulative_simpson(integrand.real, x=grid, axis=0, initial=0.0)
    imag = cumulative_simpson(integrand.imag, x=grid, axis=0, initial=0.0)
    return real + 1j * imag


def markov_coefficient(grid: np.ndarray, values: np.ndarray, gamma: float,
                       window: float = 0.5, min_points: int = 16) -> complex:
    """
    Amplitude A of the A exp(-gamma tau) component of ``values``.

    Hann-weighted mean of values * exp(gamma tau) over tau in
    [window * grid[-1], grid[-1]]. Components oscillating at a frequency
    of several cycles per window are suppressed by the taper.
    """
    if not 0.0 <= window < 1.0:
        raise SpecValidationError("markov window must lie in [0, 1)", {"window": window})
    mask = grid >= window * grid[-1]
    count = int(np.count_nonzero(mask))
    if count < min_points:
        raise QuadratureResolutionError("too few sub-grid points in the markov window",
                                        {"points": count, "required": min_points})
    weights = np.hanning(count)
    scaled = values[mask] * np.exp(gamma * grid[mask])
    return complex(np.sum(weights * scaled) / np.sum(weights))


class NeumannEvaluator:
    """
    Phase-dressed integral operators on one time sub-grid.

    Phase tables exp(-i (e - E2) tau) are built once per evaluator; an
    evaluator is owned by a single call and never shared.
    """

    def __init__(self, model: DiscreteModel, t: float,
                 settings: Optional[SeriesSettings] = None, steps: Optional[int] = None):
        self.model = model
        self.t = t
        self.settings = settings or SeriesSettings()
        self.grid = quadrature_grid(model, t, self.settings, steps)
        tau = self.grid[:, None]
        self._phase1 = np.exp(-1j * model.detunings1[None, :] * tau)
        self._phase0 = np.exp(-1j * model.detunings0[None, :] * tau)
        logger.debug(f"Neumann evaluator: {self.grid.size} time points on [0, {t:.4g}], "
                     f"n1={model.n1}, n0={model.n0}")

    def accumulate(self, channel: Channel, values: np.ndarray) -> np.ndarray:
        """History of I_kl applied to ``values`` at every sub-grid time."""
        model = self.model
        if channel is Channel.I12:
            integrand = model.couplings1[None, :] * np.conj(self._phase1) * values[:, None]
        elif channel is Channel.I01:
            integrand = np.conj(self._phase0) * model.to_zero(self._phase1 * values)
        else:
            integrand = np.conj(self._phase1) * model.to_one(self._phase0 * values)
        return -1j * _cumulative(integrand, self.grid)

    def project(self, history: np.ndarray) -> complex:
        """V21 applied to a band-1 history at the final time."""
        return complex(np.sum(self.model.couplings1 * self._phase1[-1] * history[-1]))

    def term(self, history: np.ndarray, gamma: float) -> complex:
        """Markov part of V21 applied to ``history``, evaluated at the final time."""
        window = self.settings.markov_window
        if window is None:
            return self.project(history)
        series = np.sum(self.model.couplings1[None, :] * self._phase1 * history, axis=1)
        amplitude = markov_coefficient(self.grid, series, gamma, window,
                                       self.settings.min_window_points)
        return amplitude * math.exp(-gamma * self.t)

    def terms(self, gamma: float, max_order: int) -> np.ndarray:
        """T_n = V21 J**n I12 exp(-gamma t) for n = 0..max_order."""
        history = self.accumulate(Channel.I12, np.exp(-gamma * self.grid))
        terms = np.zeros(max_order + 1, dtype=complex)
        terms[0] = self.term(history, gamma)
        for order in range(1, max_order + 1):
            history = self.accumulate(Channel.I10, self.accumulate(Channel.I01, history))
            terms[order] = self.term(history, gamma)
        return terms


def _expected_length(model: DiscreteModel, band: Band) -> Optional[int]:
    if band is Band.ONE:
        return model.n1
    if band is Band.ZERO:
        return model.n0
    return None


def apply_I(kl, f: Callable[[np.ndarray], np.ndarray], t: float, model: DiscreteModel,
            settings: Optional[SeriesSettings] = None,
            steps: Optional[int] = None) -> BandFunction:
    """
    -i * integral_0^t V_kl(tau) f(tau) dtau.

    ``f`` maps an array of times to values: shape (M,) for channel 12 (the
    level-2 amplitude), (M, n1) for channel 01 and (M, n0) for channel 10.
    """
    channel = kl if isinstance(kl, Channel) else Channel.from_tag(kl)
    evaluator = NeumannEvaluator(model, t, settings, steps)
    values = np.asarray(f(evaluator.grid), dtype=complex)

    size = _expected_length(model, channel.source)
    expected = (evaluator.grid.size,) if size is None else (evaluator.grid.size, size)
    if values.shape != expected:
        raise DimensionMismatchError("f returned the wrong shape",
                                     {"shape": values.shape, "expected": expected})

    history = evaluator.accumulate(channel, values)
    return BandFunction(band=channel.target, values=history[-1], t=t)


def neumann_terms(model: DiscreteModel, gamma_trial: float, max_order: int, t: float,
                  settings: Optional[SeriesSettings] = None) -> np.ndarray:
    """Series terms T_0..T_max_order at time ``t`` for the trial rate."""
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    return NeumannEvaluator(model, t, settings).terms(gamma_trial, max_order)


def neumann_term_ratio(model: DiscreteModel, gamma2_trial: float, n: int, t: float,
                       settings: Optional[SeriesSettings] = None) -> complex:
    """
    T_n(t) / T_(n-1)(t) of the Markov parts; close to -N for flat profiles.

    For a flat band of half-width W the exact value is
    -N * (1 + 2 gamma / (pi W))**2, independent of n.
    """
    if n < 1:
        raise ValueError("term ratio needs n >= 1")
    settings = settings or SeriesSettings()
    if not model.separable:
        logger.warning("Term ratio requested for a non-flat V10; the -N limit assumes "
                       "slowly varying profiles")

    terms = neumann_terms(model, gamma2_trial, n, t, settings)
    previous = terms[n - 1]
    floor = TINY if n == 1 else settings.term_floor * abs(terms[0]) + TINY
    if abs(previous) <= floor:
        raise TermUnderflowError("term underflow",
                                 {"order": n - 1, "magnitude": abs(previous)})
    ratio = complex(terms[n] / previous)
    logger.debug(f"T{n}/T{n - 1} at t={t:.4g}: {ratio:.6g}")
    return ratio


def two_level_closed_form(model: DiscreteModel, gamma2: float, t: float) -> BandFunction:
    """a1_k(t) = g_k / (w_k + i gamma2) * [1 - exp(i (w_k + i gamma2) t)], w_k = e1_k - E2."""
    if not gamma2 > 0:
        raise SpecValidationError("closed form needs gamma2 > 0", {"gamma2": gamma2})
    if np.any(model.kernel_matrix() != 0):
        raise SpecValidationError("closed form applies to models with v10 = 0")
    z = model.detunings1 + 1j * gamma2
    values = model.couplings1 / z * (1.0 - np.exp(1j * z * t))
    return BandFunction(band=Band.ONE, values=values, t=t)


def resummed_rate(model: DiscreteModel, max_order: int,
                  settings: Optional[SeriesSettings] = None) -> float:
    """
    Self-consistent Gamma2 from the series truncated at ``max_order``.

    Each term is normalized to the order-0 term, whose value is the model's
    golden-rule rate, so Gamma = gamma2 * Re(sum_n T_n / T_0). With
    ``geometric_tail`` the orders beyond ``max_order`` are summed as a
    geometric series with the last computed term ratio. The fixed point is
    found by damped iteration starting from gamma2.

    Raises SeriesConvergenceError when a term ratio reaches modulus 1
    (N >= 1, the series diverges) or the iteration leaves positive rates.
    """
    settings = settings or SeriesSettings()
    if model.gamma2 is None:
        raise SpecValidationError("resummed rate needs the model's golden-rule rate")
    if max_order < 0:
        raise ValueError("max_order must be >= 0")

    gamma2 = model.gamma2
    if max_order == 0 or gamma2 == 0:
        return gamma2

    t = settings.evaluation_time or 1.0 / gamma2
    evaluator = NeumannEvaluator(model, t, settings)
    rate = gamma2

    for iteration in range(settings.max_iterations):
        terms = evaluator.terms(rate, max_order)
        if abs(terms[0]) <= TINY:
            raise TermUnderflowError("term underflow", {"order": 0})
        factor = complex(np.sum(terms) / terms[0])

        floor = settings.term_floor * abs(terms[0])
        ratios = [complex(terms[n] / terms[n - 1]) for n in range(1, max_order + 1)
                  if abs(terms[n - 1]) > floor]
        diverging = [r for r in ratios if abs(r) >= 1.0]
        if diverging:
            raise SeriesConvergenceError("term ratio reached modulus 1; series diverges",
                                         {"ratio": round(abs(diverging[0]), 6),
                                          "rate": rate})

        if settings.geometric_tail and len(ratios) == max_order:
            ratio = ratios[-1]
            factor += complex(terms[-1] / terms[0] * ratio / (1.0 - ratio))

        target = gamma2 * factor.real
        updated = (1.0 - settings.damping) * rate + settings.damping * target
        if not updated > 0:
            raise SeriesConvergenceError("resummed rate is not positive",
                                         {"iteration": iteration + 1, "rate": updated})
        if abs(updated - rate) <= settings.tolerance * gamma2:
            logger.debug(f"Resummed rate converged after {iteration + 1} iterations")
            return float(updated)
        rate = updated

    raise SeriesConvergenceError("resummed rate did not converge",
                                 {"iterations": settings.max_iterations, "last": rate})
