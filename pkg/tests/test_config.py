import pytest

from kcpipe.config import Config, TestConfig
from kcpipe.errors import ConfigError, GraphError, InputError, KCError, ShapeError, StageDependencyError
from kcpipe.models import PipelineConfig
from kcpipe.utils.seeds import derive_seed
from kcpipe.utils.validators import parse_fanouts, validate_beta, validate_tau


def test_defaults_follow_config_class():
    config = PipelineConfig.from_sources(Config)
    assert config.strength.beta == 0.01
    assert config.strength.tau == 0.2
    assert config.skipgram.dimensions == 16
    assert config.sage.fanouts == [25, 10]
    assert config.walk.num_walks_per_node == 10
    assert config.walk.walk_length == 80
    assert config.top_k == 10
    assert config.seed_count == 5


def test_file_then_flags():
    file_data = {'seed': 3, 'strength': {'beta': 0.05, 'tau': 0.3}, 'top_k': 4}
    overrides = {'strength': {'tau': 0.5, 'beta': None}, 'top_k': None}
    config = PipelineConfig.from_sources(TestConfig, file_data, overrides)
    assert config.strength.beta == 0.05
    assert config.strength.tau == 0.5
    assert config.top_k == 4
    assert config.walk.seed == 3
    assert config.synthetic.n_people == 30


def test_seed_flag_reaches_every_section():
    file_data = {'walk': {'seed': 1}, 'sage': {'seed': 2}}
    config = PipelineConfig.from_sources(Config, file_data, {'seed': 9})
    assert {config.walk.seed, config.sage.seed, config.skipgram.seed, config.synthetic.seed} == {9}


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError) as info:
        PipelineConfig.from_sources(Config, {'colour': 'red'})
    assert info.value.code == 'unknown_key'
    with pytest.raises(ConfigError):
        PipelineConfig.from_sources(Config, {'walk': {'colour': 'red'}})


def test_snapshot_round_trips():
    config = PipelineConfig.from_sources(TestConfig, {'strength': {'decay_mode': 'hop'}})
    again = PipelineConfig.from_sources(TestConfig, config.to_dict())
    assert again.to_dict() == config.to_dict()


@pytest.mark.parametrize('kwargs', [
    {},
    {'use_synthetic': True, 'contacts': 'c.txt', 'metadata': 'm.txt'},
    {'contacts': 'c.txt'},
])
def test_exactly_one_input_source(kwargs):
    with pytest.raises(ConfigError) as info:
        PipelineConfig(**kwargs).validate_input_source()
    assert info.value.code == 'invalid_input_source'


def test_embedder_choice():
    assert PipelineConfig(embedder='both').embedders == ['node2vec', 'graphsage']
    with pytest.raises(ConfigError):
        PipelineConfig(embedder='deepwalk')


@pytest.mark.parametrize('value, expected', [('25,10', [25, 10]), ([5], [5]), (' 3 , 2 ', [3, 2])])
def test_parse_fanouts(value, expected):
    assert parse_fanouts(value) == expected


@pytest.mark.parametrize('value', ['', 'a,b', '3,0', [], [-1]])
def test_bad_fanouts(value):
    with pytest.raises(ConfigError):
        parse_fanouts(value)


def test_parameter_validators():
    assert validate_beta(1) == 1.0
    assert validate_tau(0) == 0.0
    for bad in (0, -0.5, float('nan'), float('inf'), 'x'):
        with pytest.raises(ConfigError):
            validate_beta(bad)
    with pytest.raises(ConfigError):
        validate_tau(1.01)


def test_exit_codes():
    assert ConfigError('x').exit_code == 2
    assert InputError('x').exit_code == 3
    assert GraphError('x', code='self_loop').exit_code == 3
    assert StageDependencyError('x').exit_code == 4
    assert ShapeError('x').exit_code == 1
    assert GraphError('x', code='self_loop').to_dict() == {'error': 'x', 'code': 'self_loop'}
    assert issubclass(GraphError, KCError)


def test_seed_derivation_is_stable():
    assert derive_seed(7, 'walk', 3, 0) == derive_seed(7, 'walk', 3, 0)
    assert derive_seed(7, 'walk', 3, 0) != derive_seed(7, 'walk', 3, 1)
    assert derive_seed(7, 'walk') != derive_seed(8, 'walk')
