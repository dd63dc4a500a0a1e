"""
Tests for the coefficient equations and the RK4 integrator.
"""

import math
import time

import numpy as np
import pytest

from src.discretize import build_discrete
from src.dynamics import (
    TRAJECTORY_COLUMNS,
    CascadeGenerator,
    StateVector,
    default_time_step,
    integrate,
    max_time_step,
    rhs,
)
from src.errors import DimensionMismatchError, NormDriftError, RecurrenceWindowError, StepSizeError
from src.experiments.validation import rabi_model
from src.model import flat_reference_spec


def random_state(rng, n1, n0, t=0.3):
    return StateVector(complex(rng.normal(), rng.normal()),
                       rng.normal(size=n1) + 1j * rng.normal(size=n1),
                       rng.normal(size=n0) + 1j * rng.normal(size=n0), t)


def test_initial_state():
    state = StateVector.initial(3, 2)
    assert (state.p2, state.p1, state.p0) == (1.0, 0.0, 0.0)
    assert state.pack().shape == (6,)


def test_rhs_conserves_norm(small_model, rng):
    """d/dt |a|^2 = 2 Re <a, da/dt> vanishes for a Hermitian generator"""
    state = random_state(rng, small_model.n1, small_model.n0)
    derivative = rhs(state, small_model)
    change = 2.0 * np.vdot(state.pack(), derivative.pack()).real
    assert abs(change) < 1e-12 * np.linalg.norm(state.pack()) ** 2


def test_rhs_dimension_mismatch(small_model):
    with pytest.raises(DimensionMismatchError):
        rhs(StateVector.initial(3, small_model.n0), small_model)


def test_separable_rhs_matches_dense(small_model, rng):
    dense = small_model.densified()
    for _ in range(5):
        state = random_state(rng, 7, 7, t=rng.uniform(0, 5))
        fast = rhs(state, small_model).pack()
        slow = rhs(state, dense).pack()
        assert np.max(np.abs(fast - slow)) <= 1e-12 * np.max(np.abs(slow))


def test_gauge_shift_invariance():
    """Shifting every energy by the same constant leaves populations unchanged"""
    base = flat_reference_spec(halfwidth=5.0, count=60, v10=0.5)
    shifted = flat_reference_spec(halfwidth=5.0, count=60, v10=0.5, e2=3.0)
    a = integrate(build_discrete(base), 2.0, 0.005)
    b = integrate(build_discrete(shifted), 2.0, 0.005)
    np.testing.assert_allclose(a.p2, b.p2, atol=1e-9)
    np.testing.assert_allclose(a.p0, b.p0, atol=1e-9)


def test_rabi_pair():
    """One resonant mode: p2 = cos^2(g t)"""
    coupling = 0.1
    traj = integrate(rabi_model(coupling), 10.0 / coupling, 0.01, sample_every=10,
                     allow_recurrence=True)
    expected = np.cos(coupling * traj.times) ** 2
    assert np.max(np.abs(traj.p2 - expected)) <= 1e-8


def test_early_time_quadratic(flat_spec):
    """1 - p2 ~ (sum g_k^2) t^2 before the exponential regime"""
    model = build_discrete(flat_spec)
    traj = integrate(model, 0.01, 0.0005)
    weight = model.coupling_weight
    for t, p2 in zip(traj.times[1:], traj.p2[1:]):
        assert abs((1.0 - p2) - weight * t ** 2) <= 0.05 * weight * t ** 2


def test_norm_drift_scales_as_dt4():
    model = build_discrete(flat_reference_spec(halfwidth=20.0, count=100, v10=0.5))
    limit = max_time_step(model)
    coarse = integrate(model, 2.0, limit, norm_tolerance=1.0)
    fine = integrate(model, 2.0, limit / 2.0, norm_tolerance=1.0)
    ratio = coarse.max_norm_drift / fine.max_norm_drift
    assert 8.0 <= ratio <= 40.0


def test_default_step_keeps_norm(flat_spec):
    model = build_discrete(flat_spec)
    traj = integrate(model, 3.0, sample_every=20)
    assert traj.max_norm_drift <= 1e-6
    assert traj.dt == pytest.approx(default_time_step(model))


def test_norm_drift_error_carries_diagnostics():
    model = build_discrete(flat_reference_spec(halfwidth=20.0, count=100, v10=0.5))
    with pytest.raises(NormDriftError) as info:
        integrate(model, 2.0, max_time_step(model), norm_tolerance=1e-14)
    assert {"t", "drift", "dt"} <= set(info.value.diagnostics)


def test_step_size_limit(flat_spec):
    model = build_discrete(flat_spec)
    # grid midpoints put the outermost mode at 19.95, not 20
    assert model.max_detuning == pytest.approx(19.95)
    limit = 0.1 * 2.0 * math.pi / (2.0 * model.max_detuning)
    assert max_time_step(model) == pytest.approx(limit)
    with pytest.raises(StepSizeError):
        integrate(model, 1.0, 2.0 * max_time_step(model))


def test_recurrence_window(flat_spec):
    model = build_discrete(flat_spec)
    with pytest.raises(RecurrenceWindowError):
        integrate(model, 0.5 * model.recurrence_time, 0.01)


def test_sampling_and_frame(flat_spec):
    traj = integrate(build_discrete(flat_spec), 1.0, 0.01, sample_every=7)
    # 100 steps round up to 105, sampled every 7th
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(1.05)
    assert traj.times.size == 16
    np.testing.assert_allclose(np.diff(traj.times), 0.07, rtol=1e-12)
    frame = traj.to_frame()
    assert list(frame.columns) == TRAJECTORY_COLUMNS
    assert traj.metadata()["n1"] == 400


def test_snapshots(flat_spec):
    traj = integrate(build_discrete(flat_spec), 0.5, 0.01, snapshot_times=[0.0, 0.25])
    assert [snapshot.t for snapshot in traj.snapshots] == pytest.approx([0.0, 0.25])
    assert traj.snapshots[1].norm() == pytest.approx(1.0, abs=1e-6)


def test_generator_reuses_midpoint_phases(small_model):
    generator = CascadeGenerator(small_model)
    first = generator.phases(0.5)
    assert generator.phases(0.5) is first
    assert generator.phases(0.6) is not first


def test_determinism(small_model):
    a = integrate(small_model, 1.0, 0.01)
    b = integrate(small_model, 1.0, 0.01)
    assert np.array_equal(a.p2, b.p2)


@pytest.mark.slow
def test_separable_fast_path_speedup():
    """The rank-1 products beat the dense kernel by at least 10x at 1000 modes"""
    model = build_discrete(flat_reference_spec(halfwidth=20.0, count=1000, v10=0.5))
    dense = model.densified()
    y = StateVector.initial(model.n1, model.n0).pack() + 1e-3

    def best_of(generator, repeats=5, calls=50):
        timings = []
        for _ in range(repeats):
            started = time.perf_counter()
            for step in range(calls):
                generator(0.01 * step, y)
            timings.append(time.perf_counter() - started)
        return min(timings)

    fast = best_of(CascadeGenerator(model))
    slow = best_of(CascadeGenerator(dense))
    assert slow >= 10.0 * fast
