from .graphsage import (
    aggregation_influence,
    build_features,
    embed_graph,
    forward,
    sample_neighborhoods,
    train_unsupervised,
)
from .node2vec import generate_walks, transition_distribution, visit_probability
from .skipgram import train_skipgram

__all__ = [
    'aggregation_influence', 'build_features', 'embed_graph', 'forward', 'sample_neighborhoods',
    'train_unsupervised', 'generate_walks', 'transition_distribution', 'visit_probability',
    'train_skipgram',
]
