"""
Cascade Models
==============

Physical description of the 2 -> 1 -> 0 cascade: energy grids for the two
photon continua, spectral/coupling profiles and the closed-form rate
prediction record. Natural units (hbar = 1) throughout.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..errors import SpecValidationError

EnergyLike = Union[float, np.ndarray]

CONVENTIONS = "amplitude rates, hbar=1"


class ProfileKind(Enum):
    """Functional forms available for densities of states and couplings."""
    FLAT = "flat"
    LORENTZIAN = "lorentzian"
    TABULATED = "table"


@dataclass(frozen=True)
class EnergyGrid:
    """Uniform midpoint grid covering [center - halfwidth, center + halfwidth]."""

    center: float
    halfwidth: float
    count: int

    def __post_init__(self):
        if not math.isfinite(self.center):
            raise SpecValidationError("grid center must be finite", {"center": self.center})
        if not (math.isfinite(self.halfwidth) and self.halfwidth > 0):
            raise SpecValidationError("grid halfwidth must be positive",
                                      {"halfwidth": self.halfwidth})
        if int(self.count) != self.count or self.count < 2:
            raise SpecValidationError("grid count must be an integer >= 2",
                                      {"count": self.count})

    @property
    def spacing(self) -> float:
        return 2.0 * self.halfwidth / self.count

    @property
    def lower(self) -> float:
        return self.center - self.halfwidth

    @property
    def upper(self) -> float:
        return self.center + self.halfwidth

    @property
    def points(self) -> np.ndarray:
        """Band midpoints: lower + (k + 1/2) * spacing."""
        return self.lower + (np.arange(self.count) + 0.5) * self.spacing

    def contains(self, energy: float) -> bool:
        """True when energy lies strictly inside the band."""
        return self.lower < energy < self.upper

    def refined(self, factor: int = 2) -> "EnergyGrid":
        return replace(self, count=self.count * factor)


@dataclass(frozen=True)
class CouplingProfile:
    """
    A non-negative real function of energy.

    Flat profiles hold ``value``; Lorentzian profiles are
    ``peak * width**2 / ((E - center)**2 + width**2)``; tabulated profiles
    interpolate linearly between ``table`` pairs and clamp outside them.
    """

    kind: ProfileKind
    value: float = 0.0
    center: float = 0.0
    width: float = 1.0
    peak: float = 0.0
    table: Tuple[Tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind is ProfileKind.FLAT:
            if not (math.isfinite(self.value) and self.value >= 0):
                raise SpecValidationError("flat profile value must be finite and >= 0",
                                          {"value": self.value})
        elif self.kind is ProfileKind.LORENTZIAN:
            if not math.isfinite(self.center):
                raise SpecValidationError("lorentzian center must be finite")
            if not (math.isfinite(self.width) and self.width > 0):
                raise SpecValidationError("lorentzian width must be positive",
                                          {"width": self.width})
            if not (math.isfinite(self.peak) and self.peak >= 0):
                raise SpecValidationError("lorentzian peak must be finite and >= 0",
                                          {"peak": self.peak})
        elif self.kind is ProfileKind.TABULATED:
            if len(self.table) < 2:
                raise SpecValidationError("tabulated profile needs at least two points")
            energies = [pair[0] for pair in self.table]
            values = [pair[1] for pair in self.table]
            if any(b <= a for a, b in zip(energies, energies[1:])):
                raise SpecValidationError("tabulated energies must be strictly increasing")
            if not all(math.isfinite(v) and v >= 0 for v in values):
                raise SpecValidationError("tabulated values must be finite and >= 0")

    @classmethod
    def flat(cls, value: float) -> "CouplingProfile":
        return cls(ProfileKind.FLAT, value=float(value))

    @classmethod
    def lorentzian(cls, center: float, width: float, peak: float) -> "CouplingProfile":
        return cls(ProfileKind.LORENTZIAN, center=float(center), width=float(width),
                   peak=float(peak))

    @classmethod
    def tabulated(cls, pairs) -> "CouplingProfile":
        table = tuple((float(e), float(v)) for e, v in pairs)
        return cls(ProfileKind.TABULATED, table=table)

    @classmethod
    def lorentzian_with_weight(cls, center: float, width: float, weight: float,
                               band: EnergyGrid) -> "CouplingProfile":
        """Lorentzian whose integral over ``band`` equals ``weight``."""
        span = (math.atan((band.upper - center) / width)
                - math.atan((band.lower - center) / width))
        return cls.lorentzian(center, width, weight / (width * span))

    @property
    def is_flat(self) -> bool:
        return self.kind is ProfileKind.FLAT

    @property
    def level(self) -> float:
        """The sweepable magnitude: flat value or Lorentzian peak."""
        if self.kind is ProfileKind.FLAT:
            return self.value
        if self.kind is ProfileKind.LORENTZIAN:
            return self.peak
        raise SpecValidationError("tabulated profiles have no single level")

    def scaled_to(self, level: float) -> "CouplingProfile":
        """Same shape with the flat value or Lorentzian peak replaced."""
        if self.kind is ProfileKind.FLAT:
            return replace(self, value=float(level))
        if self.kind is ProfileKind.LORENTZIAN:
            return replace(self, peak=float(level))
        raise SpecValidationError("tabulated profiles cannot be swept")

    def __call__(self, energy: EnergyLike) -> EnergyLike:
        return self.evaluate(energy)

    def evaluate(self, energy: EnergyLike) -> EnergyLike:
        e = np.asarray(energy, dtype=float)
        if self.kind is ProfileKind.FLAT:
            result = np.full_like(e, self.value)
        elif self.kind is ProfileKind.LORENTZIAN:
            w2 = self.width * self.width
            result = self.peak * w2 / ((e - self.center) ** 2 + w2)
        else:
            xs = np.array([pair[0] for pair in self.table])
            ys = np.array([pair[1] for pair in self.table])
            result = np.interp(e, xs, ys)
        if result.ndim == 0:
            return float(result)
        return result

    def to_text(self) -> str:
        """Config-file representation; parses back to an equal profile."""
        if self.kind is ProfileKind.FLAT:
            return f"flat({self.value!r})"
        if self.kind is ProfileKind.LORENTZIAN:
            return (f"lorentzian(center={self.center!r}, width={self.width!r}, "
                    f"peak={self.peak!r})")
        pairs = ", ".join(f"{e!r}:{v!r}" for e, v in self.table)
        return f"table({pairs})"


@dataclass(frozen=True)
class CascadeSpec:
    """
    Continuum description of the cascade.

    ``v10`` is modeled as a function of the emitted-photon detuning only,
    evaluated at e0 - e1 for a |1 e1> state coupled to a |0 e0> state.
    """

    e2: float
    grid1: EnergyGrid
    grid0: EnergyGrid
    rho1: CouplingProfile
    rho0: CouplingProfile
    v12: CouplingProfile
    v10: CouplingProfile

    def __post_init__(self):
        if not math.isfinite(self.e2):
            raise SpecValidationError("e2 must be finite", {"e2": self.e2})
        for name, grid in (("grid1", self.grid1), ("grid0", self.grid0)):
            if not grid.contains(self.e2):
                raise SpecValidationError(f"{name} must contain e2 in its interior",
                                          {"e2": self.e2, "lower": grid.lower,
                                           "upper": grid.upper})
        points1 = self.grid1.points
        points0 = self.grid0.points
        detunings = np.linspace(self.grid0.lower - self.grid1.upper,
                                self.grid0.upper - self.grid1.lower,
                                self.grid1.count + self.grid0.count + 1)
        checks = (
            ("rho1", self.rho1, points1),
            ("v12", self.v12, points1),
            ("rho0", self.rho0, points0),
            ("v10", self.v10, detunings),
        )
        for name, profile, energies in checks:
            values = np.asarray(profile(energies))
            if not np.all(np.isfinite(values)) or np.any(values < 0):
                raise SpecValidationError(f"{name} must be finite and non-negative "
                                          f"over its band")

    def refined(self, factor: int = 2) -> "CascadeSpec":
        """Both grids with ``factor`` times as many modes."""
        return replace(self, grid1=self.grid1.refined(factor),
                       grid0=self.grid0.refined(factor))

    def with_profile(self, name: str, profile: CouplingProfile) -> "CascadeSpec":
        if name not in ("rho1", "rho0", "v12", "v10"):
            raise SpecValidationError(f"unknown profile {name}")
        return replace(self, **{name: profile})


@dataclass(frozen=True)
class RatePrediction:
    """Closed-form amplitude rates for one spec."""

    gamma2: float
    n_factor: float
    gamma2_modified: float
    gamma1_estimate: float
    gamma1_single_state: float = 0.0
    beyond_proved_regime: bool = False
    conventions: str = CONVENTIONS

    def to_dict(self) -> Dict[str, Any]:
        return {
            'conventions': self.conventions,
            'gamma2': self.gamma2,
            'n_factor': self.n_factor,
            'gamma2_modified': self.gamma2_modified,
            'gamma1_estimate': self.gamma1_estimate,
            'gamma1_single_state': self.gamma1_single_state,
            'beyond_proved_regime': self.beyond_proved_regime,
        }


def flat_reference_spec(halfwidth: float = 20.0, count: int = 400, v10: float = 0.0,
                        e2: float = 0.0, count0: Optional[int] = None) -> CascadeSpec:
    """Flat-band spec with gamma2 = 1 and N = v10**2."""
    density = 1.0 / math.pi
    return CascadeSpec(
        e2=e2,
        grid1=EnergyGrid(e2, halfwidth, count),
        grid0=EnergyGrid(e2, halfwidth, count0 if count0 is not None else count),
        rho1=CouplingProfile.flat(density),
        rho0=CouplingProfile.flat(density),
        v12=CouplingProfile.flat(1.0),
        v10=CouplingProfile.flat(v10),
    )
