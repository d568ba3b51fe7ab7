from dataclasses import dataclass, field, fields

from ..errors import ConfigError
from ..utils.validators import (
    parse_fanouts,
    validate_damping,
    validate_positive_count,
    validate_positive_real,
)
from .strength import StrengthModel

EMBEDDERS = ('node2vec', 'graphsage')


@dataclass
class WalkConfig:
    num_walks_per_node: int = 10
    walk_length: int = 80
    p: float = 1.0
    q: float = 1.0
    use_strength: bool = False
    seed: int = 7

    def __post_init__(self):
        validate_positive_count('num_walks_per_node', self.num_walks_per_node)
        validate_positive_count('walk_length', self.walk_length)
        self.p = validate_positive_real('p', self.p)
        self.q = validate_positive_real('q', self.q)

    def to_dict(self):
        return _as_dict(self)


@dataclass
class SkipGramConfig:
    dimensions: int = 16
    window: int = 10
    negative_samples: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    batch_size: int = 512
    seed: int = 7

    def __post_init__(self):
        validate_positive_count('dimensions', self.dimensions)
        validate_positive_count('window', self.window)
        validate_positive_count('negative_samples', self.negative_samples)
        validate_positive_count('batch_size', self.batch_size)
        if isinstance(self.epochs, bool) or not isinstance(self.epochs, int) or self.epochs < 0:
            raise ConfigError(f'epochs must be >= 0, got {self.epochs!r}', code='invalid_count')
        self.learning_rate = validate_positive_real('learning_rate', self.learning_rate)

    def to_dict(self):
        return _as_dict(self)


@dataclass
class SageConfig:
    fanouts: list = field(default_factory=lambda: [25, 10])
    dimensions: int = 16
    use_strength: bool = False
    epochs: int = 50
    learning_rate: float = 0.05
    negative_samples: int = 5
    walk_length: int = 5
    context_window: int = 2
    seed: int = 7
    activation: str = 'relu'
    aggregator: str = 'mean'

    def __post_init__(self):
        self.fanouts = parse_fanouts(self.fanouts)
        validate_positive_count('dimensions', self.dimensions)
        validate_positive_count('negative_samples', self.negative_samples)
        validate_positive_count('walk_length', self.walk_length)
        validate_positive_count('context_window', self.context_window)
        if isinstance(self.epochs, bool) or not isinstance(self.epochs, int) or self.epochs < 0:
            raise ConfigError(f'epochs must be >= 0, got {self.epochs!r}', code='invalid_count')
        if self.activation != 'relu' or self.aggregator != 'mean':
            raise ConfigError('only the relu activation with the mean aggregator is supported',
                              code='invalid_parameter')
        self.learning_rate = validate_positive_real('learning_rate', self.learning_rate)

    @property
    def num_layers(self):
        return len(self.fanouts)

    def to_dict(self):
        return _as_dict(self)


@dataclass
class PageRankConfig:
    alpha: float = 0.85
    tolerance: float = 1e-9
    max_iterations: int = 100
    normalization: str = 'per_node'
    include_membership: bool = False

    def __post_init__(self):
        self.alpha = validate_damping(self.alpha)
        self.tolerance = validate_positive_real('tolerance', self.tolerance)
        validate_positive_count('max_iterations', self.max_iterations)
        if self.normalization not in ('probability', 'per_node'):
            raise ConfigError(f'Unknown normalization {self.normalization!r}',
                              code='invalid_normalization')

    def to_dict(self):
        return _as_dict(self)


@dataclass
class SyntheticConfig:
    n_people: int = 100
    n_departments: int = 5
    n_timestamps: int = 200
    # Expected number of co-located groups per timestamp
    event_rate: float = 3.0
    min_group_size: int = 2
    max_group_size: int = 4
    # Probability that a group is drawn from a single department
    department_affinity: float = 0.8
    fixed_rate: bool = False
    seed: int = 7

    def __post_init__(self):
        validate_positive_count('n_people', self.n_people)
        validate_positive_count('n_departments', self.n_departments)
        validate_positive_count('n_timestamps', self.n_timestamps)
        self.event_rate = validate_positive_real('event_rate', self.event_rate)
        validate_positive_count('min_group_size', self.min_group_size)
        validate_positive_count('max_group_size', self.max_group_size)
        if self.min_group_size < 2 or self.max_group_size < self.min_group_size:
            raise ConfigError('group sizes must satisfy 2 <= min_group_size <= max_group_size',
                              code='invalid_group_size')
        if not 0.0 <= self.department_affinity <= 1.0:
            raise ConfigError('department_affinity must be in [0, 1]', code='invalid_parameter')

    def to_dict(self):
        return _as_dict(self)


SECTIONS = {
    'strength': StrengthModel,
    'walk': WalkConfig,
    'skipgram': SkipGramConfig,
    'sage': SageConfig,
    'pagerank': PageRankConfig,
    'synthetic': SyntheticConfig,
}

SCALARS = ('contacts', 'metadata', 'use_synthetic', 'output_dir', 'seed', 'threads',
           'enable_kc', 'enable_strength_weighting', 'embedder', 'top_k', 'seed_count',
           'align')


@dataclass
class PipelineConfig:
    contacts: str = None
    metadata: str = None
    use_synthetic: bool = False
    output_dir: str = 'runs/latest'
    seed: int = 7
    threads: int = 1
    enable_kc: bool = True
    enable_strength_weighting: bool = False
    embedder: str = 'both'
    top_k: int = 10
    seed_count: int = 5
    align: bool = False
    strength: StrengthModel = field(default_factory=StrengthModel)
    walk: WalkConfig = field(default_factory=WalkConfig)
    skipgram: SkipGramConfig = field(default_factory=SkipGramConfig)
    sage: SageConfig = field(default_factory=SageConfig)
    pagerank: PageRankConfig = field(default_factory=PageRankConfig)
    synthetic: SyntheticConfig = field(default_factory=SyntheticConfig)

    def __post_init__(self):
        if self.embedder not in EMBEDDERS + ('both',):
            raise ConfigError(f'Unknown embedder {self.embedder!r}', code='invalid_embedder')
        validate_positive_count('threads', self.threads)
        validate_positive_count('top_k', self.top_k)
        validate_positive_count('seed_count', self.seed_count)

    @property
    def embedders(self):
        return list(EMBEDDERS) if self.embedder == 'both' else [self.embedder]

    def validate_input_source(self):
        """Exactly one input source: files or the synthetic generator."""
        has_files = bool(self.contacts or self.metadata)
        if has_files == bool(self.use_synthetic):
            raise ConfigError('Specify either --contacts/--metadata or --synthetic',
                              code='invalid_input_source')
        if has_files and not (self.contacts and self.metadata):
            raise ConfigError('Both --contacts and --metadata are required',
                              code='invalid_input_source')

    @classmethod
    def from_sources(cls, config_class, file_data=None, overrides=None):
        """Layer Config defaults, a config document and CLI flags (flags win)."""
        base = {
            'output_dir': config_class.OUTPUT_DIR,
            'seed': config_class.SEED,
            'threads': config_class.THREADS,
            'top_k': config_class.TOP_K,
            'seed_count': config_class.SEED_COUNT,
            'strength': {'beta': config_class.BETA, 'tau': config_class.TAU},
            'skipgram': {'dimensions': config_class.DIMENSIONS},
            'sage': {'dimensions': config_class.DIMENSIONS},
            'synthetic': {
                'n_people': config_class.SYNTHETIC_PEOPLE,
                'n_departments': config_class.SYNTHETIC_DEPARTMENTS,
                'n_timestamps': config_class.SYNTHETIC_TIMESTAMPS,
                'event_rate': config_class.SYNTHETIC_EVENT_RATE,
            },
        }
        merged = _merge(base, _check_keys(file_data or {}))
        merged = _merge(merged, _check_keys(overrides or {}))

        seed = merged.get('seed', 7)
        seed_forced = (overrides or {}).get('seed') is not None
        sections = {}
        for name, section_cls in SECTIONS.items():
            values = dict(merged.get(name, {}))
            if 'seed' in {f.name for f in fields(section_cls)}:
                if seed_forced:
                    values['seed'] = seed
                else:
                    values.setdefault('seed', seed)
            try:
                sections[name] = section_cls(**values)
            except TypeError as exc:
                raise ConfigError(f'Invalid [{name}] section: {exc}', code='unknown_key')
        scalars = {k: merged[k] for k in SCALARS if k in merged}
        return cls(**scalars, **sections)

    def to_dict(self):
        data = {k: getattr(self, k) for k in SCALARS}
        for name in SECTIONS:
            data[name] = getattr(self, name).to_dict()
        return data


def _as_dict(obj):
    data = {}
    for f in fields(obj):
        value = getattr(obj, f.name)
        data[f.name] = list(value) if isinstance(value, list) else value
    return data


def _check_keys(data):
    unknown = set(data) - set(SCALARS) - set(SECTIONS)
    if unknown:
        raise ConfigError(f'Unknown configuration keys: {", ".join(sorted(unknown))}',
                          code='unknown_key')
    return data


def _merge(base, extra):
    out = {k: (dict(v) if isinstance(v, dict) else v) for k, v in base.items()}
    for key, value in extra.items():
        if value is None:
            continue
        if isinstance(value, dict):
            section = dict(out.get(key, {}))
            section.update({k: v for k, v in value.items() if v is not None})
            out[key] = section
        else:
            out[key] = value
    return out
