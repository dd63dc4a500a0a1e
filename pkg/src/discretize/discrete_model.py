"""
Discrete-Mode Surrogate
=======================

Replaces each photon continuum by a finite set of orthonormal modes whose
couplings absorb sqrt(rho * dE). The resulting Hamiltonian is finite and
Hermitian, so the evolution it generates is exactly unitary.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ..errors import SpecValidationError
from ..model.models import CascadeSpec
from ..model.rates import golden_rule_rate

logger = logging.getLogger(__name__)


def _frozen(values, dtype=float) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DiscreteModel:
    """
    Finite-mode model of the cascade.

    band 1: energies ``energies1``, level-2 couplings ``couplings1`` (g_k) and
    weights ``weights1`` (w_k = sqrt(rho1 * d1)); band 0: energies
    ``energies0`` and weights ``weights0`` (u_j = sqrt(rho0 * d0)).

    The 1 <-> 0 kernel is h(k, j) = V10(e0_j - e1_k) * w_k * u_j. When
    ``separable`` is set it equals ``v10_value * w_k * u_j`` and is never
    materialized.
    """

    e2: float
    energies1: np.ndarray
    couplings1: np.ndarray
    weights1: np.ndarray
    spacing1: float
    energies0: np.ndarray
    weights0: np.ndarray
    spacing0: float
    separable: bool = True
    v10_value: float = 0.0
    kernel: Optional[np.ndarray] = None
    gamma2: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, 'energies1', _frozen(self.energies1))
        object.__setattr__(self, 'couplings1', _frozen(self.couplings1))
        object.__setattr__(self, 'weights1', _frozen(self.weights1))
        object.__setattr__(self, 'energies0', _frozen(self.energies0))
        object.__setattr__(self, 'weights0', _frozen(self.weights0))

        n1, n0 = self.energies1.size, self.energies0.size
        if n1 < 1 or n0 < 1:
            raise SpecValidationError("both bands need at least one mode")
        if self.couplings1.shape != (n1,) or self.weights1.shape != (n1,):
            raise SpecValidationError("band 1 arrays must have matching lengths")
        if self.weights0.shape != (n0,):
            raise SpecValidationError("band 0 arrays must have matching lengths")
        if not (self.spacing1 > 0 and self.spacing0 > 0):
            raise SpecValidationError("grid spacing must be positive",
                                      {"spacing1": self.spacing1, "spacing0": self.spacing0})
        arrays = (self.energies1, self.couplings1, self.weights1, self.energies0,
                  self.weights0)
        if not all(np.all(np.isfinite(a)) for a in arrays) or not math.isfinite(self.e2):
            raise SpecValidationError("all energies and couplings must be finite")

        if self.separable:
            if not math.isfinite(self.v10_value):
                raise SpecValidationError("v10 value must be finite")
            object.__setattr__(self, 'kernel', None)
        else:
            if self.kernel is None:
                raise SpecValidationError("a non-separable model needs a kernel")
            kernel = _frozen(self.kernel)
            if kernel.shape != (n1, n0) or not np.all(np.isfinite(kernel)):
                raise SpecValidationError("kernel must be a finite (n1, n0) matrix",
                                          {"shape": kernel.shape})
            object.__setattr__(self, 'kernel', kernel)

    @property
    def n1(self) -> int:
        return self.energies1.size

    @property
    def n0(self) -> int:
        return self.energies0.size

    @property
    def detunings1(self) -> np.ndarray:
        """e1_k - E2."""
        return self.energies1 - self.e2

    @property
    def detunings0(self) -> np.ndarray:
        """e0_j - E2."""
        return self.energies0 - self.e2

    @property
    def max_detuning(self) -> float:
        return float(max(np.max(np.abs(self.detunings1)), np.max(np.abs(self.detunings0))))

    @property
    def recurrence_time(self) -> float:
        return recurrence_time(self)

    @property
    def coupling_weight(self) -> float:
        """Sum of g_k**2, the short-time curvature of the survival probability."""
        return float(np.sum(self.couplings1 ** 2))

    def to_zero(self, x: np.ndarray) -> np.ndarray:
        """sum_k h(k, j) x_k over the last axis; (..., n1) -> (..., n0)."""
        if self.separable:
            projection = x @ self.weights1
            return self.v10_value * np.multiply.outer(projection, self.weights0)
        return x @ self.kernel

    def to_one(self, y: np.ndarray) -> np.ndarray:
        """sum_j h(k, j) y_j over the last axis; (..., n0) -> (..., n1)."""
        if self.separable:
            projection = y @ self.weights0
            return self.v10_value * np.multiply.outer(projection, self.weights1)
        return y @ self.kernel.T

    def kernel_matrix(self) -> np.ndarray:
        if self.separable:
            return self.v10_value * np.outer(self.weights1, self.weights0)
        return np.array(self.kernel)

    def densified(self) -> "DiscreteModel":
        """The same model with the 1 <-> 0 kernel stored as a dense matrix."""
        return replace(self, separable=False, kernel=self.kernel_matrix())


def build_discrete(spec: CascadeSpec) -> DiscreteModel:
    """Discretize both continua of ``spec`` on their midpoint grids."""
    grid1, grid0 = spec.grid1, spec.grid0
    for name, grid in (("grid1", grid1), ("grid0", grid0)):
        if grid.count < 2 or not grid.spacing > 0:
            raise SpecValidationError(f"{name} needs count >= 2 and positive spacing",
                                      {"count": grid.count, "spacing": grid.spacing})

    energies1 = grid1.points
    energies0 = grid0.points
    weights1 = np.sqrt(np.asarray(spec.rho1(energies1)) * grid1.spacing)
    weights0 = np.sqrt(np.asarray(spec.rho0(energies0)) * grid0.spacing)
    couplings1 = np.asarray(spec.v12(energies1)) * weights1

    separable = spec.v10.is_flat
    kernel = None
    v10_value = 0.0
    if separable:
        v10_value = spec.v10.value
    else:
        detuning = energies0[None, :] - energies1[:, None]
        kernel = np.asarray(spec.v10(detuning)) * weights1[:, None] * weights0[None, :]

    logger.debug(f"Discretized cascade: n1={grid1.count} (d1={grid1.spacing:.4g}), "
                 f"n0={grid0.count} (d0={grid0.spacing:.4g}), separable={separable}")

    return DiscreteModel(
        e2=spec.e2,
        energies1=energies1,
        couplings1=couplings1,
        weights1=weights1,
        spacing1=grid1.spacing,
        energies0=energies0,
        weights0=weights0,
        spacing0=grid0.spacing,
        separable=separable,
        v10_value=v10_value,
        kernel=kernel,
        gamma2=golden_rule_rate(spec),
    )


def recurrence_time(model: DiscreteModel) -> float:
    """Revival time 2 pi / min(d1, d0) of the finite surrogate."""
    return 2.0 * math.pi / min(model.spacing1, model.spacing0)
