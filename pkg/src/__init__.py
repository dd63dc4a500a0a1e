"""
Cascade Zeno - Quantum Zeno Suppression in a Cascade Decay

Simulates the 2 -> 1 -> 0 photon cascade on discretized continua and compares
the decay of the initial level with the golden-rule and Zeno-modified rates.
"""

# Physical model
from .model import (
    CONVENTIONS,
    CascadeSpec,
    CouplingProfile,
    EnergyGrid,
    RatePrediction,
    flat_reference_spec,
    predict_rates,
)

# Discrete surrogate and dynamics
from .discretize import DiscreteModel, build_discrete
from .dynamics import StateVector, Trajectory, integrate

# Series expansion
from .series import neumann_term_ratio, resummed_rate, two_level_closed_form

# Analysis
from .analysis import (
    FitResult,
    RateReport,
    compare,
    convergence_study,
    estimate_gamma1,
    fit_decay_rate,
)

# Configuration
from .config import ScenarioConfig, load_config, save_config

# Errors
from .errors import CascadeError

__version__ = "1.0.0"

__all__ = [
    # Model
    'CONVENTIONS',
    'CascadeSpec',
    'CouplingProfile',
    'EnergyGrid',
    'RatePrediction',
    'flat_reference_spec',
    'predict_rates',

    # Dynamics
    'DiscreteModel',
    'build_discrete',
    'StateVector',
    'Trajectory',
    'integrate',

    # Series
    'neumann_term_ratio',
    'resummed_rate',
    'two_level_closed_form',

    # Analysis
    'FitResult',
    'RateReport',
    'compare',
    'convergence_study',
    'estimate_gamma1',
    'fit_decay_rate',

    # Configuration
    'ScenarioConfig',
    'load_config',
    'save_config',

    'CascadeError',
]
