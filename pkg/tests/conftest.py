import pytest
from click.testing import CliRunner

from kcpipe import create_cli
from kcpipe.config import TestConfig
from kcpipe.models import KnowledgeGraph, SyntheticConfig
from kcpipe.storage import build_kg, generate_synthetic


def graph_from_events(events, people=None):
    """KnowledgeGraph over Person nodes 0..n-1 from (t, i, j) triples."""
    graph = KnowledgeGraph()
    n = people if people is not None else 1 + max((max(i, j) for _, i, j in events), default=-1)
    for v in range(n):
        graph.add_person(v)
    for t, i, j in events:
        graph.add_contact(i, j, t)
    return graph.compute_node_properties()


@pytest.fixture
def make_graph():
    return graph_from_events


@pytest.fixture
def triangle():
    return graph_from_events([(20, 0, 1), (20, 1, 2), (20, 0, 2)])


@pytest.fixture
def small_synthetic():
    config = SyntheticConfig(n_people=30, n_departments=3, n_timestamps=40, event_rate=2.0, seed=3)
    contacts, metadata = generate_synthetic(config)
    return build_kg(contacts, metadata)


@pytest.fixture
def cli():
    return create_cli(TestConfig)


@pytest.fixture
def runner():
    return CliRunner()


# Small hyperparameters so the CLI tests finish quickly
FAST_EMBED = ['--dims', '4', '--walks', '2', '--length', '8', '--window', '3', '--epochs', '1',
              '--sage-epochs', '2', '--fanouts', '5,3']


@pytest.fixture
def fast_embed():
    return list(FAST_EMBED)
