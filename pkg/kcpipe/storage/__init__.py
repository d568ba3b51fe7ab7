from .archive import deserialize_graph, load_features, load_weights, save_features, save_weights, serialize_graph
from .contacts import ContactFileRow, MetadataRow, build_kg, parse_contacts, parse_metadata, read_lines
from .synthetic import generate_synthetic
from .tables import read_embeddings, write_embeddings, write_projection

__all__ = [
    'deserialize_graph', 'serialize_graph', 'load_features', 'load_weights', 'save_features',
    'save_weights', 'ContactFileRow', 'MetadataRow', 'build_kg', 'parse_contacts',
    'parse_metadata', 'read_lines', 'generate_synthetic',
    'read_embeddings', 'write_embeddings', 'write_projection',
]
