"""
Coefficient-Equation Integrator
===============================

Interaction-picture equations for the amplitudes of the discrete surrogate,
integrated with fixed-step classical Runge-Kutta 4:

    da2/dt  = -i sum_k g_k a1_k exp(-i (e1_k - E2) t)
    da1k/dt = -i g_k a2 exp(+i (e1_k - E2) t) - i sum_j h(k,j) a0_j exp(-i (e0_j - e1_k) t)
    da0j/dt = -i sum_k h(k,j) a1_k exp(+i (e0_j - e1_k) t)

Phases are evaluated from t directly at every stage.
"""

import logging
import math
import time
from typing import Iterable, List, Optional, Tuple

import numpy as np

from ..discretize.discrete_model import DiscreteModel
from ..errors import DimensionMismatchError, NormDriftError, RecurrenceWindowError, StepSizeError
from .models import StateVector, Trajectory

logger = logging.getLogger(__name__)

DEFAULT_NORM_TOLERANCE = 1e-6


class CascadeGenerator:
    """Right-hand side of the coefficient equations on a packed state [a2, a1, a0]."""

    def __init__(self, model: DiscreteModel):
        self.model = model
        self.n1 = model.n1
        self.n0 = model.n0
        self._omega1 = model.detunings1
        self._omega0 = model.detunings0
        self._g = model.couplings1
        self._phase_time: Optional[float] = None
        self._phases: Tuple[np.ndarray, np.ndarray] = (None, None)

    @property
    def size(self) -> int:
        return 1 + self.n1 + self.n0

    def phases(self, t: float) -> Tuple[np.ndarray, np.ndarray]:
        # RK4 evaluates the midpoint twice; reuse that pair
        if t != self._phase_time:
            self._phases = (np.exp(-1j * self._omega1 * t), np.exp(-1j * self._omega0 * t))
            self._phase_time = t
        return self._phases

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        phase1, phase0 = self.phases(t)
        a2 = y[0]
        a1 = y[1:1 + self.n1]
        a0 = y[1 + self.n1:]

        x1 = a1 * phase1
        x0 = a0 * phase0

        dy = np.empty_like(y)
        dy[0] = -1j * np.dot(self._g, x1)
        dy[1:1 + self.n1] = -1j * np.conj(phase1) * (self._g * a2 + self.model.to_one(x0))
        dy[1 + self.n1:] = -1j * np.conj(phase0) * self.model.to_zero(x1)
        return dy


def rhs(state: StateVector, model: DiscreteModel) -> StateVector:
    """Time derivative of ``state`` under ``model``, returned as a StateVector."""
    if state.a1.shape != (model.n1,) or state.a0.shape != (model.n0,):
        raise DimensionMismatchError("state dimensions do not match the model",
                                     {"a1": state.a1.shape, "a0": state.a0.shape,
                                      "n1": model.n1, "n0": model.n0})
    generator = CascadeGenerator(model)
    derivative = generator(state.t, state.pack())
    return StateVector.from_packed(derivative, model.n1, state.t)


def max_time_step(model: DiscreteModel) -> float:
    """Largest accepted step: one tenth of the fastest phase period 2 pi / (2 max|e - E2|)."""
    detuning = model.max_detuning
    if detuning == 0:
        return math.inf
    return 0.1 * (2.0 * math.pi / (2.0 * detuning))


def default_time_step(model: DiscreteModel, rate: Optional[float] = None) -> float:
    """min(0.05 / max detuning, 0.01 / predicted rate)."""
    rate = model.gamma2 if rate is None else rate
    candidates = []
    if model.max_detuning > 0:
        candidates.append(0.05 / model.max_detuning)
    if rate:
        candidates.append(0.01 / rate)
    if not candidates:
        candidates.append(0.01)
    return min(candidates)


def integrate(model: DiscreteModel, t_max: float, dt: Optional[float] = None,
              sample_every: int = 1, *, snapshot_times: Iterable[float] = (),
              norm_tolerance: float = DEFAULT_NORM_TOLERANCE,
              allow_recurrence: bool = False) -> Trajectory:
    """
    Evolve the initial state (a2 = 1, empty bands) up to ``t_max``.

    Args:
        model: discrete surrogate, shared read-only
        t_max: end time; must stay below half the recurrence time unless
            ``allow_recurrence`` is set
        dt: fixed RK4 step; defaults to ``default_time_step(model)``
        sample_every: record populations every this many steps
        snapshot_times: instants at which full amplitudes are kept
        norm_tolerance: largest accepted |norm - 1| at any sample

    Returns:
        Trajectory sampled at t = m * sample_every * dt; the step count is
        rounded up to a multiple of sample_every, so the last sample may lie
        up to (sample_every - 1) * dt past t_max
    """
    if dt is None:
        dt = default_time_step(model)
    if not (t_max > 0 and dt > 0):
        raise StepSizeError("t_max and dt must be positive", {"t_max": t_max, "dt": dt})
    if sample_every < 1:
        raise StepSizeError("sample_every must be >= 1", {"sample_every": sample_every})

    limit = max_time_step(model)
    if dt > limit:
        raise StepSizeError("time step too large to resolve the fastest phase",
                            {"dt": dt, "max_dt": limit})

    t_rec = model.recurrence_time
    if t_max >= 0.5 * t_rec and not allow_recurrence:
        raise RecurrenceWindowError("t_max reaches half the recurrence time",
                                    {"t_max": t_max, "recurrence_time": t_rec})

    n_steps = int(math.ceil(t_max / dt - 1e-9))
    n_steps = sample_every * int(math.ceil(n_steps / sample_every))
    snapshot_steps = {int(round(t / dt)): t for t in snapshot_times}
    generator = CascadeGenerator(model)
    y = StateVector.initial(model.n1, model.n0).pack()

    logger.info(f"Integrating {generator.size} amplitudes for {n_steps} RK4 steps "
                f"(dt={dt:.4g}, t_max={t_max:.4g})")
    started = time.perf_counter()

    times: List[float] = []
    samples: List[Tuple[float, float, float]] = []
    snapshots: List[StateVector] = []

    def record(step: int, state: np.ndarray) -> None:
        t = step * dt
        p2 = float(abs(state[0]) ** 2)
        p1 = float(np.vdot(state[1:1 + model.n1], state[1:1 + model.n1]).real)
        p0 = float(np.vdot(state[1 + model.n1:], state[1 + model.n1:]).real)
        drift = abs(p2 + p1 + p0 - 1.0)
        if drift > norm_tolerance:
            raise NormDriftError("norm drift exceeded tolerance",
                                 {"t": t, "drift": drift, "tolerance": norm_tolerance,
                                  "dt": dt})
        times.append(t)
        samples.append((p2, p1, p0))

    if 0 in snapshot_steps:
        snapshots.append(StateVector.from_packed(y, model.n1, 0.0))
    record(0, y)

    half = 0.5 * dt
    for step in range(n_steps):
        t = step * dt
        k1 = generator(t, y)
        k2 = generator(t + half, y + half * k1)
        k3 = generator(t + half, y + half * k2)
        k4 = generator(t + dt, y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

        done = step + 1
        if done in snapshot_steps:
            snapshots.append(StateVector.from_packed(y, model.n1, done * dt))
        if done % sample_every == 0:
            record(done, y)

    populations = np.array(samples)
    trajectory = Trajectory(
        times=np.array(times),
        p2=populations[:, 0],
        p1=populations[:, 1],
        p0=populations[:, 2],
        norm=populations.sum(axis=1),
        dt=dt,
        recurrence_time=t_rec,
        n1=model.n1,
        n0=model.n0,
        snapshots=tuple(snapshots),
    )
    logger.info(f"Integration finished in {time.perf_counter() - started:.2f}s, "
                f"max norm drift {trajectory.max_norm_drift:.3e}")
    return trajectory
