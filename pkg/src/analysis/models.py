"""
Analysis Models
===============

Fit results and the rate report that compares a simulation with the
closed-form prediction.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, Tuple

from ..model.models import CONVENTIONS, RatePrediction


@dataclass(frozen=True)
class FitResult:
    """Log-linear fit of the survival probability, p2 ~ exp(-2 * rate * t)."""

    rate: float
    window: Tuple[float, float]
    r_squared: float
    residual_rms: float
    n_points: int
    rate_stderr: float = 0.0
    constant: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rate': self.rate,
            'window': [self.window[0], self.window[1]],
            'r_squared': self.r_squared,
            'residual_rms': self.residual_rms,
            'rate_stderr': self.rate_stderr,
            'n_points': self.n_points,
        }


@dataclass(frozen=True)
class RateReport:
    """Prediction against fitted rate for one simulated spec."""

    prediction: RatePrediction
    fit: FitResult
    relative_error: float
    convergence_flag: bool = False
    beyond_proved_regime: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def build(cls, prediction: RatePrediction, fit: FitResult,
              metadata: Dict[str, Any] = None) -> "RateReport":
        reference = prediction.gamma2_modified
        if reference > 0:
            relative_error = abs(fit.rate - reference) / reference
        else:
            relative_error = 0.0 if fit.rate == 0 else float('inf')
        return cls(
            prediction=prediction,
            fit=fit,
            relative_error=relative_error,
            beyond_proved_regime=prediction.beyond_proved_regime,
            metadata=dict(metadata or {}),
        )

    def flagged(self, converged: bool) -> "RateReport":
        return replace(self, convergence_flag=converged)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'conventions': CONVENTIONS,
            'prediction': self.prediction.to_dict(),
            'fit': self.fit.to_dict(),
            'relative_error': self.relative_error,
            'convergence_flag': self.convergence_flag,
            'beyond_proved_regime': self.beyond_proved_regime,
            'metadata': dict(self.metadata),
        }
