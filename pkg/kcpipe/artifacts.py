"""Fixed relative names of everything a run directory holds."""
import logging
import time
from contextlib import contextmanager
from pathlib import Path

from .models.report import RunManifest
from .utils.files import file_sha256, read_json, write_json

logger = logging.getLogger(__name__)

INPUT_CONTACTS = 'input/contacts.txt'
INPUT_METADATA = 'input/metadata.txt'
KG_RAW = 'kg_raw.graph'
INGEST_REPORT = 'ingest_report.json'
KG_KC = 'kg_kc.graph'
KC_REPORT = 'kc_report.json'
ANALYTICS_REPORT = 'analytics_report.json'
MANIFEST = 'manifest.json'

PRODUCED_BY = {
    'kg_raw': 'ingest',
    'ingest_report': 'ingest',
    'kg_kc': 'complete',
    'kc_report': 'complete',
    'node2vec_raw': 'embed',
    'node2vec_kc': 'embed',
    'graphsage_raw': 'embed',
    'graphsage_kc': 'embed',
}


def graph_path(variant):
    return KG_RAW if variant == 'raw' else KG_KC


def embedding_path(embedder, variant):
    return f'embeddings/{embedder}_{variant}.csv'


def lineage_path(embedder, variant):
    return f'embeddings/{embedder}_{variant}.json'


def walks_path(variant):
    return f'walks/node2vec_{variant}.txt'


def features_path(variant):
    return f'embeddings/graphsage_{variant}.features'


def weights_path(variant):
    return f'embeddings/graphsage_{variant}.weights'


def projection_path(embedder):
    return f'projection_{embedder}.csv'


def exists(out_dir, relative):
    return (Path(out_dir) / relative).is_file()


def hash_tree(out_dir):
    root = Path(out_dir)
    hashes = {}
    for path in sorted(root.rglob('*')):
        if path.is_file() and path.name != MANIFEST and not path.name.endswith('.tmp'):
            hashes[path.relative_to(root).as_posix()] = file_sha256(path)
    return hashes


def record_stage(out_dir, config, stage, seconds):
    """Merge a stage timing into the manifest and refresh all file hashes."""
    from . import __version__

    path = Path(out_dir) / MANIFEST
    manifest = RunManifest(config=config.to_dict(), version=__version__)
    if path.is_file():
        previous = read_json(path)
        manifest.stages.update(previous.get('stages', {}))
    manifest.stages[stage] = {'seconds': round(seconds, 3)}
    manifest.files = hash_tree(out_dir)
    write_json(path, manifest.to_dict())
    return manifest


@contextmanager
def timed_stage(out_dir, config, stage):
    start = time.perf_counter()
    logger.info('stage %s started', stage)
    yield
    seconds = time.perf_counter() - start
    logger.info('stage %s finished in %.2fs', stage, seconds)
    record_stage(out_dir, config, stage, seconds)
