from dataclasses import dataclass, field

import numpy as np

from ..errors import ShapeError


@dataclass
class EmbeddingMatrix:
    """|V| x d matrix whose rows follow node_ids."""

    node_ids: list
    vectors: np.ndarray
    generator: str
    seed: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.node_ids):
            raise ShapeError(
                f'embedding has shape {self.vectors.shape} for {len(self.node_ids)} nodes')

    @property
    def dimensions(self):
        return self.vectors.shape[1]

    def row(self, node_id):
        return self.vectors[self.node_ids.index(node_id)]

    def lineage(self):
        return {'generator': self.generator, 'seed': self.seed, 'dimensions': self.dimensions}


@dataclass
class WalkCorpus:
    walks: list
    walk_length: int
    num_walks_per_node: int
    config: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.walks)

    def to_text(self):
        return ''.join(' '.join(str(v) for v in walk) + '\n' for walk in self.walks)

    def as_padded_array(self):
        """Walks as a (k, T) int array, -1 past an early termination."""
        out = np.full((len(self.walks), self.walk_length), -1, dtype=np.int64)
        for row, walk in enumerate(self.walks):
            out[row, :len(walk)] = walk
        return out


@dataclass
class FeatureMatrix:
    node_ids: list
    values: np.ndarray
    names: list

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (len(self.node_ids), len(self.names)):
            raise ShapeError(f'feature matrix has shape {self.values.shape}, expected '
                             f'({len(self.node_ids)}, {len(self.names)})')
        if not np.all(np.isfinite(self.values)):
            raise ShapeError('feature matrix contains non-finite entries')


@dataclass
class LayerWeights:
    # matrices[k] has shape (out_dim, 2 * in_dim)
    matrices: list

    @property
    def num_layers(self):
        return len(self.matrices)

    def copy(self):
        return LayerWeights([w.copy() for w in self.matrices])

    def flat(self):
        return np.concatenate([w.ravel() for w in self.matrices])

    def with_flat(self, vector):
        out, offset = [], 0
        for w in self.matrices:
            out.append(np.asarray(vector[offset:offset + w.size], dtype=np.float64).reshape(w.shape))
            offset += w.size
        return LayerWeights(out)


@dataclass
class SampledNeighborhoods:
    """layers[k][v] = (sorted neighbor ids, matching strengths)."""

    node_ids: list
    layers: list

    @property
    def num_layers(self):
        return len(self.layers)

    def members(self, k, v):
        return self.layers[k][v][0]

    def __eq__(self, other):
        if not isinstance(other, SampledNeighborhoods):
            return NotImplemented
        return self.node_ids == other.node_ids and self.layers == other.layers
