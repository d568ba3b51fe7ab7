import logging
from pathlib import Path

import click

from .. import artifacts
from ..middleware import stage_command
from ..storage import build_kg, generate_synthetic, parse_contacts, parse_metadata, read_lines
from ..storage.archive import serialize_graph
from ..storage.synthetic import contacts_to_text, metadata_to_text
from ..utils.files import dump_json, write_json, write_text
from .common import build_config, common_options, input_options

logger = logging.getLogger(__name__)


def run_ingest(config):
    """Knowledge fusion: read or generate the contact data and write KG_raw."""
    config.validate_input_source()
    out = Path(config.output_dir)

    if config.use_synthetic:
        contacts, metadata = generate_synthetic(config.synthetic)
        contact_lines = contacts_to_text(contacts).splitlines()
        metadata_lines = metadata_to_text(metadata).splitlines()
        source = {'type': 'synthetic', 'synthetic': config.synthetic.to_dict()}
    else:
        # Read both files before writing anything
        contact_lines = read_lines(config.contacts)
        metadata_lines = read_lines(config.metadata)
        source = {'type': 'files', 'contacts': Path(config.contacts).name,
                  'metadata': Path(config.metadata).name}

    rows, report = parse_contacts(contact_lines)
    graph = build_kg(rows, parse_metadata(metadata_lines), report)
    document = {'source': source, 'counts': report.to_dict()}

    if config.use_synthetic:
        write_text(out / artifacts.INPUT_CONTACTS, '\n'.join(contact_lines) + '\n')
        write_text(out / artifacts.INPUT_METADATA, '\n'.join(metadata_lines) + '\n')
    serialize_graph(graph, out / artifacts.KG_RAW)
    write_json(out / artifacts.INGEST_REPORT, document)
    logger.info('Ingest: %d valid rows, %d skipped, %d contact pairs',
                report.valid, report.skipped, report.distinct_pairs)
    return graph, document


@click.command('ingest')
@common_options
@input_options
@click.pass_context
@stage_command('ingest')
def ingest_cmd(ctx, **options):
    """Build KG_raw from contact/metadata files or synthetic data."""
    config = build_config(ctx, options)
    with artifacts.timed_stage(config.output_dir, config, 'ingest'):
        _, document = run_ingest(config)
    click.echo(dump_json(document), nl=False)
