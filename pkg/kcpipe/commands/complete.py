import logging
from pathlib import Path

import click

from .. import artifacts
from ..analytics.report import reference_check
from ..errors import GraphError
from ..kc import edge_strengths, propagate_contagion, transitive_closure_step
from ..middleware import require_artifacts, stage_command
from ..storage import deserialize_graph, serialize_graph
from ..utils.files import dump_json, read_json, write_json
from .common import build_config, common_options, strength_options

logger = logging.getLogger(__name__)


def contact_growth(raw, completed):
    """Per-person contact counts before and after completion."""
    people = raw.person_ids()
    gained = [completed.degree(v) - raw.degree(v) for v in people]
    n = len(people) or 1
    return {
        'people_with_new_contacts': sum(1 for g in gained if g > 0),
        'mean_contacts_raw': sum(raw.degree(v) for v in people) / n,
        'mean_contacts_kc': sum(completed.degree(v) for v in people) / n,
        'max_new_contacts': max(gained, default=0),
    }


def resolve_seeds(graph, raw_ids):
    seeds = []
    for raw_id in raw_ids:
        node = graph.find(raw_id)
        if node is None:
            raise GraphError(f'Unknown seed person {raw_id!r}', code='not_found')
        seeds.append(node)
    return seeds


def run_complete(config, infect=()):
    """Closure, contact strengths and optional contagion seeds; writes KG_KC."""
    out = Path(config.output_dir)
    require_artifacts(out, artifacts.KG_RAW)
    raw = deserialize_graph(out / artifacts.KG_RAW)

    completed, stats = transitive_closure_step(raw, threads=config.threads)
    edge_strengths(completed, config.strength)
    _, recheck = transitive_closure_step(completed, threads=config.threads)
    seeds = resolve_seeds(completed, infect)

    document = {
        'strength_model': config.strength.to_dict(),
        'closure': stats.to_dict(),
        'contact_growth': contact_growth(raw, completed),
        'idempotence': {'inferred_pairs': recheck.inferred_pairs,
                        'inferred_events': recheck.inferred_events},
    }
    if seeds:
        _, contagion = propagate_contagion(completed, seeds, config.strength)
        names = {v: completed.nodes[v].name for v in completed.nodes}
        document['contagion'] = contagion.to_dict(names)

    ingest = read_json(out / artifacts.INGEST_REPORT) if artifacts.exists(out, artifacts.INGEST_REPORT) else {}
    if ingest.get('source', {}).get('type') == 'files':
        document['reference'] = reference_check(stats.direct_pairs, stats.total_pairs)
        logger.info('Contact pairs %d -> %d (reference 1694 -> 1882)',
                    stats.direct_pairs, stats.total_pairs)

    serialize_graph(completed, out / artifacts.KG_KC)
    write_json(out / artifacts.KC_REPORT, document)
    return completed, document


@click.command('complete')
@common_options
@strength_options
@click.option('--infect', multiple=True, help='Raw person id to seed contagion from (repeatable).')
@click.pass_context
@stage_command('complete')
def complete_cmd(ctx, infect, **options):
    """Infer transitive contacts and strengths, writing KG_KC."""
    config = build_config(ctx, options)
    with artifacts.timed_stage(config.output_dir, config, 'complete'):
        _, document = run_complete(config, infect)
    click.echo(dump_json(document), nl=False)
