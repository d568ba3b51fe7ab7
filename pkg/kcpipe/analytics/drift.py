import numpy as np
from scipy.linalg import orthogonal_procrustes

from ..errors import ShapeError
from ..models.report import DriftReport


def check_comparable(emb_raw, emb_kc):
    if emb_raw.node_ids != emb_kc.node_ids:
        raise ShapeError('embeddings cover different node sets or orderings')
    if emb_raw.vectors.shape != emb_kc.vectors.shape:
        raise ShapeError(f'embedding shapes differ: {emb_raw.vectors.shape} vs '
                         f'{emb_kc.vectors.shape}')
    if emb_raw.generator != emb_kc.generator or emb_raw.seed != emb_kc.seed:
        raise ShapeError(f'embedding lineage differs: {emb_raw.lineage()} vs {emb_kc.lineage()}',
                         code='lineage_mismatch')


def align(emb_raw, emb_kc):
    """Rotate the KC vectors onto the raw ones (orthogonal Procrustes)."""
    rotation, _ = orthogonal_procrustes(emb_kc.vectors, emb_raw.vectors)
    return emb_kc.vectors @ rotation


def embedding_drift(emb_raw, emb_kc, aligned=False):
    """Per-node Euclidean distance between matched embeddings."""
    check_comparable(emb_raw, emb_kc)
    kc = align(emb_raw, emb_kc) if aligned else emb_kc.vectors
    distances = np.linalg.norm(emb_raw.vectors - kc, axis=1)
    return DriftReport(node_ids=list(emb_raw.node_ids), distances=distances,
                       generator=emb_raw.generator, aligned=aligned)
