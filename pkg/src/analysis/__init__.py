"""
Analysis Package
================

Decay-rate fitting and comparison with the closed-form prediction.
"""

from .comparison import (
    compare,
    convergence_study,
    default_t_max,
    estimate_gamma1,
    simulate_spec,
)
from .models import FitResult, RateReport
from .rate_fitting import MIN_R_SQUARED, default_window, fit_decay_rate

__all__ = [
    'FitResult',
    'MIN_R_SQUARED',
    'RateReport',
    'compare',
    'convergence_study',
    'default_t_max',
    'default_window',
    'estimate_gamma1',
    'fit_decay_rate',
    'simulate_spec',
]
