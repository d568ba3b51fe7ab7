import logging
from pathlib import Path

import click

from .. import artifacts
from ..analytics import (
    assemble_report,
    embedding_drift,
    joint_projection,
    pagerank,
    pca_project,
    select_seeds,
    top_k_comparison,
)
from ..analytics.pagerank import ranking
from ..embeddings import aggregation_influence, sample_neighborhoods, visit_probability
from ..errors import StageDependencyError
from ..kc import propagate_contagion
from ..middleware import require_artifacts, stage_command
from ..models.embedding import WalkCorpus
from ..models.settings import SageConfig
from ..storage import deserialize_graph, read_embeddings, write_projection
from ..utils.files import dump_json, read_json, write_json
from .common import analyze_options, build_config, common_options

logger = logging.getLogger(__name__)

# Settings echoed in the report; embedder settings travel in the lineage files
ECHO_KEYS = ('seed', 'enable_kc', 'enable_strength_weighting', 'embedder', 'top_k', 'seed_count',
             'align', 'strength', 'pagerank')


def display_names(graph):
    return {v: f'{sorted(node.labels)[0]} {node.name}' for v, node in graph.nodes.items()}


def load_embedding(out, embedder, variant):
    require_artifacts(out, artifacts.lineage_path(embedder, variant))
    lineage = read_json(out / artifacts.lineage_path(embedder, variant))
    embedding = read_embeddings(out / artifacts.embedding_path(embedder, variant),
                                generator=lineage['generator'], seed=lineage['seed'])
    return embedding, lineage


def load_walks(out, variant, walk_length):
    with open(out / artifacts.walks_path(variant), encoding='utf-8') as fh:
        walks = [[int(v) for v in line.split()] for line in fh if line.strip()]
    return WalkCorpus(walks=walks, walk_length=walk_length, num_walks_per_node=0)


def pagerank_section(config, raw, completed, names):
    raw_result = pagerank(raw, config.pagerank)
    section = {'config': config.pagerank.to_dict(), 'raw': raw_result.to_dict()}
    if completed is None:
        top = ranking(raw_result.scores)[:config.top_k]
        section['top_raw'] = [{'rank': r + 1, 'node': names.get(v, v),
                               'score': raw_result.scores[v]} for r, v in enumerate(top)]
        return section, raw_result, None
    kc_result = pagerank(completed, config.pagerank)
    comparison = top_k_comparison(raw_result.scores, kc_result.scores, config.top_k)
    section['kc'] = kc_result.to_dict()
    section['comparison'] = comparison.to_dict(names)
    return section, raw_result, kc_result


def contagion_section(config, graphs, results, names):
    """Seed the top PageRank people of each graph and count who ends up at risk."""
    section = {}
    for variant, graph in graphs.items():
        person_set = set(graph.person_ids())
        people = {v: s for v, s in results[variant].scores.items() if v in person_set}
        seeds = select_seeds(people, config.seed_count)
        _, report = propagate_contagion(graph.copy(), seeds, config.strength)
        section[variant] = report.to_dict(names)
    return section


def _compare(before, after, names, top_k):
    deltas = {v: after.get(v, 0.0) - before.get(v, 0.0) for v in sorted(set(before) | set(after))}
    gainers = sorted((v for v in deltas if deltas[v] > 0), key=lambda v: (-deltas[v], v))
    return {
        'nodes': len(deltas),
        'increased': sum(1 for d in deltas.values() if d > 0),
        'decreased': sum(1 for d in deltas.values() if d < 0),
        'mean_abs_change': (sum(abs(d) for d in deltas.values()) / len(deltas)) if deltas else 0.0,
        'top_gain': [{'node': names.get(v, v), 'raw': before.get(v, 0.0),
                      'kc': after.get(v, 0.0)} for v in gainers[:top_k]],
    }


def visits_section(config, out, people, names, lengths):
    raw = visit_probability(load_walks(out, 'raw', lengths['raw']), people)
    kc = visit_probability(load_walks(out, 'kc', lengths['kc']), people)
    return _compare(raw, kc, names, config.top_k)


def influence_section(config, graphs, names, settings):
    influence = {}
    for variant, graph in graphs.items():
        neighborhoods = sample_neighborhoods(graph, settings, node_ids=graph.person_ids())
        influence[variant] = aggregation_influence(neighborhoods)
    section = _compare(influence['raw'], influence['kc'], names, config.top_k)
    section['fanouts'] = list(settings.fanouts)
    return section


def run_analyze(config):
    """Evaluation battery over whatever the earlier stages produced."""
    out = Path(config.output_dir)
    require_artifacts(out, artifacts.KG_RAW)
    raw_available = [e for e in config.embedders
                     if artifacts.exists(out, artifacts.embedding_path(e, 'raw'))]
    if not raw_available:
        raise StageDependencyError(
            f'no raw embeddings found in {out}; run `embed` first', code='missing_embed')

    raw = deserialize_graph(out / artifacts.KG_RAW)
    completed = None
    notices = []
    if not config.enable_kc:
        notices.append('KC disabled: baseline pipeline, drift and comparisons skipped')
    elif artifacts.exists(out, artifacts.KG_KC):
        completed = deserialize_graph(out / artifacts.KG_KC)
    else:
        notices.append('KG_KC not found: drift and comparisons skipped')

    names = display_names(raw)
    graphs = {'raw': raw} if completed is None else {'raw': raw, 'kc': completed}
    people = raw.person_ids()

    sections = {
        'config': {k: v for k, v in config.to_dict().items() if k in ECHO_KEYS},
        'lineage': {},
        'ingest': None,
        'closure': None,
        'visits': None,
        'influence': None,
        'drift': None,
        'projections': {},
    }
    if artifacts.exists(out, artifacts.INGEST_REPORT):
        sections['ingest'] = read_json(out / artifacts.INGEST_REPORT)['counts']
    if completed is not None and artifacts.exists(out, artifacts.KC_REPORT):
        kc_report = read_json(out / artifacts.KC_REPORT)
        sections['closure'] = {key: kc_report[key] for key in
                               ('closure', 'contact_growth', 'idempotence', 'reference')
                               if key in kc_report}

    pagerank_doc, raw_rank, kc_rank = pagerank_section(config, raw, completed, names)
    sections['pagerank'] = pagerank_doc
    results = {'raw': raw_rank} if kc_rank is None else {'raw': raw_rank, 'kc': kc_rank}
    sections['contagion'] = contagion_section(config, graphs, results, names)

    drift, walk_lengths, sage = {}, {}, None
    for embedder in raw_available:
        emb_raw, lineage_raw = load_embedding(out, embedder, 'raw')
        variants = {'raw': lineage_raw}
        emb_kc = None
        if completed is not None:
            if artifacts.exists(out, artifacts.embedding_path(embedder, 'kc')):
                emb_kc, lineage_kc = load_embedding(out, embedder, 'kc')
                variants['kc'] = lineage_kc
            else:
                notices.append(f'{embedder} KC embeddings not found: drift skipped')
        if embedder == 'node2vec':
            walk_lengths = {v: doc['walks']['walk_length'] for v, doc in variants.items()}
        elif embedder == 'graphsage':
            sage = SageConfig(**lineage_raw['config'])
        sections['lineage'][embedder] = {
            v: {k: doc[k] for k in ('generator', 'seed', 'dimensions', 'graph_sha256')}
            for v, doc in variants.items()}

        projection_file = artifacts.projection_path(embedder)
        if emb_kc is not None:
            aligned = config.align and embedder == 'node2vec'
            drift[embedder] = embedding_drift(emb_raw, emb_kc, aligned=aligned).to_dict()
            raw_xy, kc_xy, fit = joint_projection(emb_raw, emb_kc)
        else:
            fit = pca_project(emb_raw.vectors)
            raw_xy, kc_xy = fit.coordinates, None
        write_projection(emb_raw.node_ids, raw_xy, kc_xy, out / projection_file)
        sections['projections'][embedder] = {'file': projection_file, **fit.to_dict()}
        if fit.degenerate:
            notices.append(f'{embedder} projection is degenerate (all rows equal)')

    if drift:
        sections['drift'] = drift
    if completed is not None:
        if 'kc' in walk_lengths:
            sections['visits'] = visits_section(config, out, people, names, walk_lengths)
        if sage is not None:
            sections['influence'] = influence_section(config, graphs, names, sage)

    report = assemble_report(**sections, notices=notices or None)
    write_json(out / artifacts.ANALYTICS_REPORT, report)
    for notice in notices:
        logger.warning(notice)
    return report


@click.command('analyze')
@common_options
@analyze_options
@click.pass_context
@stage_command('analyze')
def analyze_cmd(ctx, **options):
    """PageRank comparison, contagion, drift and joint PCA over a run directory."""
    config = build_config(ctx, options)
    with artifacts.timed_stage(config.output_dir, config, 'analyze'):
        report = run_analyze(config)
    click.echo(dump_json(report), nl=False)
