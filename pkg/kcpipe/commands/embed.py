import logging
from dataclasses import replace
from pathlib import Path

import click

from .. import artifacts
from ..embeddings import embed_graph, generate_walks, train_skipgram
from ..errors import StageDependencyError
from ..middleware import require_artifacts, stage_command
from ..storage import deserialize_graph, save_features, save_weights, write_embeddings
from ..utils.files import dump_json, file_sha256, write_json, write_text
from .common import build_config, common_options, embed_options

logger = logging.getLogger(__name__)

VARIANTS = ('raw', 'kc')


def resolve_variants(config, variant='auto'):
    """Graph variants to embed; auto means raw plus kc when KC is on and present."""
    out = Path(config.output_dir)
    if variant == 'auto':
        variants = ['raw']
        if config.enable_kc and artifacts.exists(out, artifacts.KG_KC):
            variants.append('kc')
        return variants
    if variant == 'kc' and not config.enable_kc:
        raise StageDependencyError('KC embeddings requested with KC disabled', code='kc_disabled')
    return list(VARIANTS) if variant == 'both' else [variant]


def load_variant(config, variant):
    out = Path(config.output_dir)
    relative = artifacts.graph_path(variant)
    require_artifacts(out, relative)
    return deserialize_graph(out / relative), file_sha256(out / relative)


def walk_settings(config):
    return replace(config.walk, use_strength=config.walk.use_strength
                   or config.enable_strength_weighting)


def sage_settings(config):
    return replace(config.sage, use_strength=config.sage.use_strength
                   or config.enable_strength_weighting)


def _lineage(embedding, variant, graph_hash, settings):
    return {
        **embedding.lineage(),
        'variant': variant,
        'graph': artifacts.graph_path(variant),
        'graph_sha256': graph_hash,
        'config': settings.to_dict(),
        'loss_history': list(embedding.meta.get('loss_history', [])),
    }


def embed_node2vec(config, graph, variant, graph_hash):
    out = Path(config.output_dir)
    settings = walk_settings(config)
    corpus = generate_walks(graph, settings, threads=config.threads)
    write_text(out / artifacts.walks_path(variant), corpus.to_text())
    embedding = train_skipgram(corpus, config.skipgram, node_ids=graph.person_ids())
    write_embeddings(embedding, out / artifacts.embedding_path('node2vec', variant))
    lineage = _lineage(embedding, variant, graph_hash, config.skipgram)
    lineage['walks'] = settings.to_dict()
    write_json(out / artifacts.lineage_path('node2vec', variant), lineage)
    return embedding


def embed_graphsage(config, graph, variant, graph_hash):
    out = Path(config.output_dir)
    settings = sage_settings(config)
    embedding, features, _, weights = embed_graph(graph, settings, node_ids=graph.person_ids())
    write_embeddings(embedding, out / artifacts.embedding_path('graphsage', variant))
    save_features(features, out / artifacts.features_path(variant))
    save_weights(weights, out / artifacts.weights_path(variant))
    write_json(out / artifacts.lineage_path('graphsage', variant),
               _lineage(embedding, variant, graph_hash, settings))
    return embedding


EMBEDDERS = {'node2vec': embed_node2vec, 'graphsage': embed_graphsage}


def run_embed(config, variant='auto'):
    """Knowledge reasoning: one embeddings CSV per (embedder, graph variant)."""
    produced = {}
    for name in resolve_variants(config, variant):
        graph, graph_hash = load_variant(config, name)
        for embedder in config.embedders:
            logger.info('Embedding %s graph with %s', name, embedder)
            embedding = EMBEDDERS[embedder](config, graph, name, graph_hash)
            produced[artifacts.embedding_path(embedder, name)] = embedding.lineage()
    return produced


@click.command('embed')
@common_options
@embed_options
@click.option('--variant', type=click.Choice(['auto', 'raw', 'kc', 'both']), default='auto',
              show_default=True, help='Graph archive(s) to embed.')
@click.pass_context
@stage_command('embed')
def embed_cmd(ctx, variant, **options):
    """Train Node2Vec and/or GraphSAGE embeddings on KG_raw and KG_KC."""
    config = build_config(ctx, options)
    with artifacts.timed_stage(config.output_dir, config, 'embed'):
        produced = run_embed(config, variant)
    click.echo(dump_json({'embeddings': produced}), nl=False)


@click.command('export-walks')
@common_options
@embed_options
@click.option('--variant', type=click.Choice(VARIANTS), default='raw', show_default=True)
@click.pass_context
@stage_command('export-walks')
def export_walks_cmd(ctx, variant, **options):
    """Write the Node2Vec walk corpus, one walk per line."""
    config = build_config(ctx, options)
    graph, _ = load_variant(config, variant)
    corpus = generate_walks(graph, walk_settings(config), threads=config.threads)
    path = Path(config.output_dir) / artifacts.walks_path(variant)
    write_text(path, corpus.to_text())
    click.echo(dump_json({'walks': len(corpus), 'path': artifacts.walks_path(variant)}), nl=False)
