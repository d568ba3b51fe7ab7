from .closure import connected_components, transitive_closure_step
from .contagion import (
    ContagionReport,
    aggregate_strength,
    bounded_strength,
    edge_strengths,
    path_strength,
    propagate_contagion,
)

__all__ = [
    'connected_components', 'transitive_closure_step', 'ContagionReport', 'aggregate_strength',
    'bounded_strength', 'edge_strengths', 'path_strength', 'propagate_contagion',
]
