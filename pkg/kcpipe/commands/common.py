import json

import click

from ..errors import ConfigError
from ..models.settings import PipelineConfig


def _apply(options):
    def decorator(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn
    return decorator


common_options = _apply([
    click.option('--seed', type=int, default=None, help='Global RNG seed.'),
    click.option('--out', 'output_dir', type=click.Path(file_okay=False), default=None,
                 help='Run directory.'),
    click.option('--threads', type=int, default=None,
                 help='Worker threads; 1 gives the bit-deterministic reference path.'),
    click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
                 help='JSON config file or a previous run manifest.'),
])

input_options = _apply([
    click.option('--contacts', type=click.Path(dir_okay=False), default=None),
    click.option('--metadata', type=click.Path(dir_okay=False), default=None),
    click.option('--synthetic', 'use_synthetic', is_flag=True,
                 help='Generate an office-like dataset instead of reading files.'),
    click.option('--n-people', type=int, default=None),
    click.option('--n-departments', type=int, default=None),
    click.option('--n-timestamps', type=int, default=None),
    click.option('--event-rate', type=float, default=None),
])

strength_options = _apply([
    click.option('--beta', type=float, default=None, help='Transmissibility per second.'),
    click.option('--tau', type=float, default=None, help='Propagation threshold.'),
    click.option('--aggregator', type=click.Choice(['noisy_or', 'max', 'avg', 'sum']),
                 default=None),
    click.option('--decay-mode', type=click.Choice(['subtractive', 'multiplicative', 'hop']),
                 default=None),
    click.option('--max-hops', type=int, default=None),
    click.option('--no-clamp', 'no_clamp', is_flag=True),
])

embed_options = _apply([
    click.option('--embedder', type=click.Choice(['node2vec', 'graphsage', 'both']),
                 default=None),
    click.option('--dims', type=int, default=None),
    click.option('--walks', type=int, default=None, help='Walks per node.'),
    click.option('--length', type=int, default=None, help='Walk length.'),
    click.option('--window', type=int, default=None),
    click.option('--p', 'p', type=float, default=None),
    click.option('--q', 'q', type=float, default=None),
    click.option('--epochs', type=int, default=None, help='Skip-gram epochs.'),
    click.option('--sage-epochs', type=int, default=None),
    click.option('--fanouts', type=str, default=None, help='Per-layer sample budgets, e.g. 25,10.'),
    click.option('--use-strength', is_flag=True,
                 help='Weight walks and aggregation by contact strength.'),
])

analyze_options = _apply([
    click.option('--top-k', type=int, default=None),
    click.option('--seed-count', type=int, default=None),
    click.option('--align', is_flag=True,
                 help='Procrustes-align Node2Vec embeddings before measuring drift.'),
])


def read_config_file(path):
    if not path:
        return None
    try:
        with open(path, encoding='utf-8') as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f'Cannot read config {path}: {exc.strerror or exc}', code='unreadable')
    except json.JSONDecodeError as exc:
        raise ConfigError(f'Config {path} is not valid JSON: {exc}', code='invalid_json')
    if isinstance(data, dict) and 'config' in data and 'files' in data:
        data = data['config']
    if not isinstance(data, dict):
        raise ConfigError(f'Config {path} must hold an object', code='invalid_json')
    return data


def overrides_from(options):
    """Map CLI option values onto the PipelineConfig layout."""
    get = options.get
    no_clamp = get('no_clamp')
    fanouts = get('fanouts')
    return {
        'seed': get('seed'),
        'output_dir': get('output_dir'),
        'threads': get('threads'),
        'contacts': get('contacts'),
        'metadata': get('metadata'),
        'use_synthetic': get('use_synthetic') or None,
        'embedder': get('embedder'),
        'enable_strength_weighting': get('use_strength') or None,
        'enable_kc': False if get('no_kc') else None,
        'top_k': get('top_k'),
        'seed_count': get('seed_count'),
        'align': get('align') or None,
        'synthetic': {
            'n_people': get('n_people'),
            'n_departments': get('n_departments'),
            'n_timestamps': get('n_timestamps'),
            'event_rate': get('event_rate'),
        },
        'strength': {
            'beta': get('beta'),
            'tau': get('tau'),
            'aggregator': get('aggregator'),
            'decay_mode': get('decay_mode'),
            'max_hops': get('max_hops'),
            'clamp': False if no_clamp else None,
        },
        'walk': {
            'num_walks_per_node': get('walks'),
            'walk_length': get('length'),
            'p': get('p'),
            'q': get('q'),
        },
        'skipgram': {
            'dimensions': get('dims'),
            'window': get('window'),
            'epochs': get('epochs'),
        },
        'sage': {
            'dimensions': get('dims'),
            'fanouts': fanouts,
            'epochs': get('sage_epochs'),
        },
    }


def build_config(ctx, options):
    """Config defaults < --config document < flags."""
    config_class = ctx.obj['config_class']
    file_data = read_config_file(options.get('config_path'))
    return PipelineConfig.from_sources(config_class, file_data, overrides_from(options))
