from dataclasses import dataclass, field

from ..errors import ConfigError
from ..utils.validators import validate_beta, validate_positive_count, validate_tau

AGGREGATORS = ('noisy_or', 'max', 'avg', 'sum')
# subtractive: P_A - e^(-beta t); multiplicative: P_A (1 - e^(-beta t));
# hop: multiplicative, further attenuated by e^(-beta h) for hop index h
DECAY_MODES = ('subtractive', 'multiplicative', 'hop')


@dataclass
class StrengthModel:
    beta: float = 0.01
    tau: float = 0.2
    aggregator: str = 'noisy_or'
    clamp: bool = True
    decay_mode: str = 'subtractive'
    max_hops: int = 1

    def __post_init__(self):
        self.beta = validate_beta(self.beta)
        self.tau = validate_tau(self.tau)
        if self.aggregator not in AGGREGATORS:
            raise ConfigError(f'Unknown aggregator {self.aggregator!r}', code='invalid_aggregator')
        if self.decay_mode not in DECAY_MODES:
            raise ConfigError(f'Unknown decay mode {self.decay_mode!r}', code='invalid_decay_mode')
        validate_positive_count('max_hops', self.max_hops)

    def to_dict(self):
        return {
            'beta': self.beta,
            'tau': self.tau,
            'aggregator': self.aggregator,
            'clamp': self.clamp,
            'decay_mode': self.decay_mode,
            'max_hops': self.max_hops,
        }


@dataclass
class PathStrength:
    source: int
    target: int
    per_path: list = field(default_factory=list)
    aggregate: float = 0.0

    def to_dict(self, names=None):
        names = names or {}
        return {
            'source': names.get(self.source, self.source),
            'target': names.get(self.target, self.target),
            'per_path': list(self.per_path),
            'aggregate': self.aggregate,
        }


@dataclass
class ClosureStats:
    direct_pairs: int = 0
    inferred_pairs: int = 0
    direct_events: int = 0
    inferred_events: int = 0
    timestamps: int = 0
    component_sizes: dict = field(default_factory=dict)

    @property
    def total_pairs(self):
        return self.direct_pairs + self.inferred_pairs

    @property
    def growth_ratio(self):
        return self.inferred_pairs / self.direct_pairs if self.direct_pairs else 0.0

    @property
    def event_growth_ratio(self):
        return self.inferred_events / self.direct_events if self.direct_events else 0.0

    def to_dict(self):
        return {
            'direct_pairs': self.direct_pairs,
            'inferred_pairs': self.inferred_pairs,
            'total_pairs': self.total_pairs,
            'growth_ratio': self.growth_ratio,
            'direct_events': self.direct_events,
            'inferred_events': self.inferred_events,
            'event_growth_ratio': self.event_growth_ratio,
            'timestamps': self.timestamps,
            'component_sizes': {str(k): self.component_sizes[k] for k in sorted(self.component_sizes)},
        }
