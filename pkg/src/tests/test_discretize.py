"""
Tests for the discrete-mode surrogate.
"""

import math

import numpy as np
import pytest

from src.discretize import DiscreteModel, build_discrete, recurrence_time
from src.errors import SpecValidationError
from src.model import CouplingProfile, flat_reference_spec


def test_flat_weights_and_couplings():
    """g_k = V12 * sqrt(rho1 * d1) and sum g_k**2 = rho1 * V12**2 * band length"""
    model = build_discrete(flat_reference_spec(halfwidth=20.0, count=400))
    expected = math.sqrt(0.1 / math.pi)
    np.testing.assert_allclose(model.couplings1, expected)
    np.testing.assert_allclose(model.weights0, expected)
    assert model.coupling_weight == pytest.approx(40.0 / math.pi)
    assert model.gamma2 == pytest.approx(1.0)
    assert model.separable


def test_recurrence_time_uses_finer_spacing():
    model = build_discrete(flat_reference_spec(halfwidth=20.0, count=400, count0=200))
    assert recurrence_time(model) == pytest.approx(2.0 * math.pi / 0.1)
    assert model.recurrence_time == recurrence_time(model)


def test_refinement_doubles_recurrence_time():
    spec = flat_reference_spec(halfwidth=10.0, count=100)
    coarse = build_discrete(spec)
    fine = build_discrete(spec.refined(2))
    assert fine.recurrence_time == pytest.approx(2.0 * coarse.recurrence_time)


def test_separable_matches_dense_kernel(small_model, rng):
    """The rank-1 products equal products with the materialized kernel"""
    dense = small_model.densified()
    assert not dense.separable
    x = rng.normal(size=7) + 1j * rng.normal(size=7)
    y = rng.normal(size=7) + 1j * rng.normal(size=7)
    np.testing.assert_allclose(small_model.to_zero(x), dense.to_zero(x), rtol=1e-12)
    np.testing.assert_allclose(small_model.to_one(y), dense.to_one(y), rtol=1e-12)

    batch = rng.normal(size=(3, 7))
    np.testing.assert_allclose(small_model.to_zero(batch), dense.to_zero(batch), rtol=1e-12)


def test_kernel_follows_detuning_profile():
    """A non-flat V10 is sampled at e0 - e1"""
    spec = flat_reference_spec(halfwidth=2.0, count=4).with_profile(
        "v10", CouplingProfile.lorentzian(center=0.0, width=1.0, peak=1.0))
    model = build_discrete(spec)
    assert not model.separable
    detuning = model.energies0[None, :] - model.energies1[:, None]
    expected = (1.0 / (detuning ** 2 + 1.0)) * np.outer(model.weights1, model.weights0)
    np.testing.assert_allclose(model.kernel_matrix(), expected)


def test_model_arrays_are_read_only(small_model):
    with pytest.raises(ValueError):
        small_model.couplings1[0] = 1.0


@pytest.mark.parametrize("overrides", [
    {"couplings1": [1.0, 2.0]},
    {"spacing0": 0.0},
    {"energies1": [0.0, math.nan, 1.0]},
    {"separable": False},
])
def test_invalid_models_rejected(overrides):
    fields = dict(e2=0.0, energies1=[-1.0, 0.0, 1.0], couplings1=[0.1, 0.1, 0.1],
                  weights1=[0.1, 0.1, 0.1], spacing1=1.0, energies0=[0.0], weights0=[0.1],
                  spacing0=1.0)
    fields.update(overrides)
    with pytest.raises(SpecValidationError):
        DiscreteModel(**fields)
