"""
Dynamics Models
===============

State vector of the cascade amplitudes and the sampled trajectory record.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import numpy as np
import pandas as pd

TRAJECTORY_COLUMNS = ['t', 'p2', 'p1', 'p0', 'norm']


@dataclass(frozen=True, eq=False)
class StateVector:
    """Interaction-picture amplitudes a2(t), a1_k(t), a0_j(t)."""

    a2: complex
    a1: np.ndarray
    a0: np.ndarray
    t: float = 0.0

    @classmethod
    def initial(cls, n1: int, n0: int) -> "StateVector":
        """System on level 2, both bands empty."""
        return cls(1.0 + 0.0j, np.zeros(n1, dtype=complex), np.zeros(n0, dtype=complex), 0.0)

    @classmethod
    def from_packed(cls, y: np.ndarray, n1: int, t: float = 0.0) -> "StateVector":
        return cls(complex(y[0]), np.array(y[1:1 + n1]), np.array(y[1 + n1:]), t)

    def pack(self) -> np.ndarray:
        return np.concatenate(([self.a2], self.a1, self.a0)).astype(complex)

    @property
    def p2(self) -> float:
        return float(abs(self.a2) ** 2)

    @property
    def p1(self) -> float:
        return float(np.vdot(self.a1, self.a1).real)

    @property
    def p0(self) -> float:
        return float(np.vdot(self.a0, self.a0).real)

    def norm(self) -> float:
        return self.p2 + self.p1 + self.p0


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Populations sampled on a uniform time grid, plus run metadata."""

    times: np.ndarray
    p2: np.ndarray
    p1: np.ndarray
    p0: np.ndarray
    norm: np.ndarray
    dt: float
    recurrence_time: float
    n1: int
    n0: int
    snapshots: Tuple[StateVector, ...] = field(default_factory=tuple)

    @property
    def max_norm_drift(self) -> float:
        return float(np.max(np.abs(self.norm - 1.0)))

    @property
    def span(self) -> Tuple[float, float]:
        return float(self.times[0]), float(self.times[-1])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            't': self.times,
            'p2': self.p2,
            'p1': self.p1,
            'p0': self.p0,
            'norm': self.norm,
        }, columns=TRAJECTORY_COLUMNS)

    def metadata(self) -> Dict[str, Any]:
        return {
            'dt': self.dt,
            'samples': int(self.times.size),
            'recurrence_time': self.recurrence_time,
            'max_norm_drift': self.max_norm_drift,
            'n1': self.n1,
            'n0': self.n0,
        }
