"""
Discretize Package
==================

Finite, exactly unitary discrete-mode surrogate of the continuum model.
"""

from .discrete_model import DiscreteModel, build_discrete, recurrence_time

__all__ = ['DiscreteModel', 'build_discrete', 'recurrence_time']
