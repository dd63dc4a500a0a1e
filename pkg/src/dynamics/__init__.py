"""
Dynamics Package
================

Interaction-picture coefficient equations and their RK4 integration.
"""

from .integrator import (
    DEFAULT_NORM_TOLERANCE,
    CascadeGenerator,
    default_time_step,
    integrate,
    max_time_step,
    rhs,
)
from .models import TRAJECTORY_COLUMNS, StateVector, Trajectory

__all__ = [
    'DEFAULT_NORM_TOLERANCE',
    'CascadeGenerator',
    'StateVector',
    'TRAJECTORY_COLUMNS',
    'Trajectory',
    'default_time_step',
    'integrate',
    'max_time_step',
    'rhs',
]
