"""
Series Models
=============

Channel tags of the integral operators, band-valued functions and the
quadrature settings of the series layer.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


class Band(Enum):
    """Where a vector of amplitudes lives."""
    LEVEL2 = "2"
    ONE = "1"
    ZERO = "0"


class Channel(Enum):
    """Integral operators I_kl: I12 maps a2 into band 1, I01 band 1 into band 0, I10 back."""
    I12 = "12"
    I10 = "10"
    I01 = "01"

    @classmethod
    def from_tag(cls, tag) -> "Channel":
        return cls(str(tag))

    @property
    def source(self) -> Band:
        return {Channel.I12: Band.LEVEL2, Channel.I10: Band.ZERO, Channel.I01: Band.ONE}[self]

    @property
    def target(self) -> Band:
        return {Channel.I12: Band.ONE, Channel.I10: Band.ONE, Channel.I01: Band.ZERO}[self]


@dataclass(frozen=True, eq=False)
class BandFunction:
    """Complex amplitudes over the modes of one band at time ``t``."""
    band: Band
    values: np.ndarray
    t: float

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class SeriesSettings:
    """Quadrature and fixed-point controls."""

    # Time sub-grid: points per period of the fastest phase (2 * max detuning)
    points_per_period: int = 20
    min_points_per_period: int = 10
    min_intervals: int = 64

    # Terms below term_floor * |T0| count as underflow
    term_floor: float = 1e-14

    # Each term keeps its exp(-gamma tau) component, Hann-averaged over
    # [markov_window * t, t]; None uses the raw value at t
    markov_window: Optional[float] = 0.5
    min_window_points: int = 16

    # Fixed point for the resummed rate
    damping: float = 0.5
    max_iterations: int = 200
    tolerance: float = 1e-8
    geometric_tail: bool = True
    evaluation_time: Optional[float] = None
