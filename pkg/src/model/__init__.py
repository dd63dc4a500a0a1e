"""
Model Package
=============

Physical description of the cascade and closed-form rate predictions.
"""

from .models import (
    CONVENTIONS,
    CascadeSpec,
    CouplingProfile,
    EnergyGrid,
    ProfileKind,
    RatePrediction,
    flat_reference_spec,
)
from .rates import (
    golden_rule_rate,
    level1_golden_rule_rate,
    predict_rates,
    zeno_factor,
)

__all__ = [
    'CONVENTIONS',
    'CascadeSpec',
    'CouplingProfile',
    'EnergyGrid',
    'ProfileKind',
    'RatePrediction',
    'flat_reference_spec',
    'golden_rule_rate',
    'level1_golden_rule_rate',
    'predict_rates',
    'zeno_factor',
]
