"""
Series Package
==============

Closed-form two-level solution and the Neumann series of the cascade
integral equations.
"""

from .models import Band, BandFunction, Channel, SeriesSettings
from .neumann import (
    NeumannEvaluator,
    apply_I,
    markov_coefficient,
    neumann_term_ratio,
    neumann_terms,
    quadrature_grid,
    resummed_rate,
    two_level_closed_form,
)

__all__ = [
    'Band',
    'BandFunction',
    'Channel',
    'NeumannEvaluator',
    'SeriesSettings',
    'apply_I',
    'markov_coefficient',
    'neumann_term_ratio',
    'neumann_terms',
    'quadrature_grid',
    'resummed_rate',
    'two_level_closed_form',
]
