import logging

import click

from .. import artifacts
from ..middleware import stage_command
from ..utils.files import dump_json
from .analyze import run_analyze
from .common import (
    analyze_options,
    build_config,
    common_options,
    embed_options,
    input_options,
    strength_options,
)
from .complete import run_complete
from .embed import run_embed
from .ingest import run_ingest

logger = logging.getLogger(__name__)


def run_pipeline(config):
    """ingest -> complete -> embed(raw, kc) -> analyze; KC off gives the baseline."""
    out = config.output_dir
    summary = {}
    with artifacts.timed_stage(out, config, 'ingest'):
        _, summary['ingest'] = run_ingest(config)
    if config.enable_kc:
        with artifacts.timed_stage(out, config, 'complete'):
            _, kc_report = run_complete(config)
        summary['complete'] = kc_report['closure']
    else:
        logger.info('KC disabled: skipping complete')
    with artifacts.timed_stage(out, config, 'embed'):
        summary['embed'] = run_embed(config, 'both' if config.enable_kc else 'raw')
    with artifacts.timed_stage(out, config, 'analyze'):
        report = run_analyze(config)
    summary['notices'] = report.get('notices', [])
    return summary


@click.command('pipeline')
@common_options
@input_options
@strength_options
@embed_options
@analyze_options
@click.option('--no-kc', 'no_kc', is_flag=True, help='Baseline pipeline without completion.')
@click.pass_context
@stage_command('pipeline')
def pipeline_cmd(ctx, **options):
    """Run every stage in sequence into one run directory."""
    config = build_config(ctx, options)
    summary = run_pipeline(config)
    click.echo(dump_json(summary), nl=False)
