"""CSV exports for embeddings and 2-D projections."""

import pandas as pd

from ..errors import InputError
from ..models.embedding import EmbeddingMatrix
from ..utils.files import write_text


def embeddings_to_frame(embedding):
    columns = [f'dim_{k}' for k in range(embedding.dimensions)]
    frame = pd.DataFrame(embedding.vectors, columns=columns)
    frame.insert(0, 'node_id', embedding.node_ids)
    return frame


def write_embeddings(embedding, path):
    write_text(path, embeddings_to_frame(embedding).to_csv(index=False, lineterminator='\n'))


def read_embeddings(path, generator=None, seed=None):
    try:
        frame = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise InputError(f'Cannot read embeddings {path}: {exc}', code='unreadable')
    if frame.columns[0] != 'node_id':
        raise InputError(f'{path} is not an embeddings CSV', code='malformed')
    frame = frame.sort_values('node_id', kind='mergesort')
    return EmbeddingMatrix(
        node_ids=[int(v) for v in frame['node_id']],
        vectors=frame.drop(columns='node_id').to_numpy(dtype='float64'),
        generator=generator or 'unknown',
        seed=seed,
    )


def write_projection(node_ids, raw_coords, kc_coords, path):
    """Rows `node_id,pc1,pc2,variant`, raw block first."""
    frames = []
    for variant, coords in (('raw', raw_coords), ('kc', kc_coords)):
        if coords is None:
            continue
        frames.append(pd.DataFrame({
            'node_id': node_ids,
            'pc1': coords[:, 0],
            'pc2': coords[:, 1],
            'variant': variant,
        }))
    frame = pd.concat(frames, ignore_index=True)
    write_text(path, frame.to_csv(index=False, lineterminator='\n'))
