import math

from ..errors import ConfigError


def validate_beta(beta):
    """Transmissibility must be a positive finite rate."""
    if not isinstance(beta, (int, float)) or not math.isfinite(beta) or beta <= 0:
        raise ConfigError(f'beta must be > 0, got {beta!r}', code='invalid_beta')
    return float(beta)


def validate_tau(tau):
    if not isinstance(tau, (int, float)) or not 0.0 <= tau <= 1.0:
        raise ConfigError(f'tau must be in [0, 1], got {tau!r}', code='invalid_tau')
    return float(tau)


def validate_damping(alpha):
    if not isinstance(alpha, (int, float)) or not 0.0 < alpha < 1.0:
        raise ConfigError(f'alpha must be in (0, 1), got {alpha!r}', code='invalid_alpha')
    return float(alpha)


def validate_positive_count(name, value):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f'{name} must be an integer >= 1, got {value!r}', code='invalid_count')
    return value


def validate_positive_real(name, value):
    if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
        raise ConfigError(f'{name} must be > 0, got {value!r}', code='invalid_parameter')
    return float(value)


def parse_fanouts(value):
    """Parse a fan-out list such as '25,10' or [25, 10]."""
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(',') if p.strip()]
        try:
            fanouts = [int(p) for p in parts]
        except ValueError:
            raise ConfigError(f'fanouts must be comma-separated integers, got {value!r}',
                              code='invalid_fanouts')
    else:
        fanouts = list(value)
    if not fanouts:
        raise ConfigError('fanouts must not be empty', code='invalid_fanouts')
    for f in fanouts:
        validate_positive_count('fanout', f)
    return fanouts
