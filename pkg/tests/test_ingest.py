import numpy as np
import pytest

from kcpipe.embeddings import build_features, forward, sample_neighborhoods
from kcpipe.embeddings.graphsage import init_weights
from kcpipe.errors import ArchiveError, InputError
from kcpipe.kc import transitive_closure_step
from kcpipe.models import KnowledgeGraph, SageConfig, SyntheticConfig
from kcpipe.models.graph import DEPARTMENT, IS_PART_OF
from kcpipe.storage import (
    build_kg,
    deserialize_graph,
    generate_synthetic,
    load_features,
    load_weights,
    parse_contacts,
    parse_metadata,
    read_lines,
    save_features,
    save_weights,
    serialize_graph,
)
from kcpipe.storage.archive import graph_from_text, graph_to_text
from kcpipe.storage.synthetic import contacts_to_text, metadata_to_text


def test_parse_single_row():
    rows, report = parse_contacts(['40 15 22'])
    assert [(r.t, r.i, r.j) for r in rows] == [(40, '15', '22')]
    assert report.valid == 1


def test_parse_sorts_rows():
    rows, _ = parse_contacts(['60 1 2', '40 1 3'])
    assert [(r.t, r.i, r.j) for r in rows] == [(40, '1', '3'), (60, '1', '2')]


def test_parse_counts_skipped_lines():
    rows, report = parse_contacts(['40 7 7', '', '40 1 2', '40 2 1', 'oops', '60 1 2'])
    assert len(rows) == 2
    assert report.self_loops == 1
    assert report.blank == 1
    assert report.duplicates == 1
    assert report.malformed == 1
    assert report.skipped == 4
    assert report.distinct_pairs == 1


@pytest.mark.parametrize('lines', [[], ['', '   ']])
def test_parse_empty_input(lines):
    with pytest.raises(InputError) as info:
        parse_contacts(lines)
    assert info.value.code == 'empty_input'


def test_parse_rejects_wrong_file():
    with pytest.raises(InputError) as info:
        parse_contacts(['x y', 'a b c', '40 1 2'])
    assert info.value.code == 'malformed_majority'


def test_metadata_keeps_first_department():
    rows = parse_metadata(['1 D1', '2 D2', '1 D3', ''])
    assert [(r.i, r.department) for r in rows] == [('1', 'D1'), ('2', 'D2')]


def test_read_lines_missing(tmp_path):
    with pytest.raises(InputError) as info:
        read_lines(tmp_path / 'missing.txt')
    assert info.value.code == 'unreadable'


def test_build_kg_two_people_one_department():
    rows, report = parse_contacts(['20 1 2'])
    graph = build_kg(rows, parse_metadata(['1 D1', '2 D1']), report)
    assert len(graph.nodes) == 3
    assert graph.num_contact_edges == 1
    assert len(graph.membership_edges()) == 2
    assert report.people == 2
    assert report.departments == 1


def test_build_kg_person_without_metadata():
    rows, _ = parse_contacts(['20 1 2'])
    graph = build_kg(rows, parse_metadata(['1 D1']))
    person = graph.find('2')
    assert person is not None
    assert graph.neighbors(person, IS_PART_OF) == []


def test_build_kg_unknown_metadata_person():
    rows, report = parse_contacts(['20 1 2'])
    graph = build_kg(rows, parse_metadata(['9 D1']), report)
    lonely = graph.find('9')
    assert graph.degree(lonely) == 0
    assert report.unknown_metadata_people == 1


def test_synthetic_is_deterministic():
    config = SyntheticConfig(n_people=20, n_departments=2, n_timestamps=30, seed=1)
    first = generate_synthetic(config)
    second = generate_synthetic(config)
    assert contacts_to_text(first[0]) == contacts_to_text(second[0])
    assert metadata_to_text(first[1]) == metadata_to_text(second[1])


def test_synthetic_single_group_spanning_tree():
    config = SyntheticConfig(n_people=3, n_departments=1, n_timestamps=1, event_rate=1.0,
                             fixed_rate=True, min_group_size=3, max_group_size=3, seed=5)
    contacts, metadata = generate_synthetic(config)
    assert len(contacts) == 2
    assert {r.department for r in metadata} == {'D1'}
    graph = build_kg(contacts, metadata)
    _, stats = transitive_closure_step(graph)
    assert stats.inferred_pairs == 1


def test_synthetic_contact_edges_match_distinct_pairs():
    contacts, metadata = generate_synthetic(SyntheticConfig(seed=11))
    graph = build_kg(contacts, metadata)
    assert graph.num_contact_edges == len({r.pair for r in contacts})
    assert len(graph.node_ids(DEPARTMENT)) == 5


def test_archive_round_trip(small_synthetic, tmp_path):
    completed, _ = transitive_closure_step(small_synthetic)
    for graph in (small_synthetic, completed):
        path = tmp_path / 'graph.graph'
        serialize_graph(graph, path)
        assert deserialize_graph(path) == graph


def test_empty_graph_archive():
    text = graph_to_text(KnowledgeGraph())
    assert text == 'kcpipe-graph 1\nnodes 0\nedges 0\nend\n'
    assert graph_from_text(text) == KnowledgeGraph()


def test_hand_written_archive():
    text = ('kcpipe-graph 1\n'
            'nodes 2\n'
            '0\tPerson\ta\tdeg=1.0\n'
            '1\tPerson\tb\t\n'
            'edges 1\n'
            '0\t1\tHAS_CONTACT_WITH\tdirect\t0.5\t20,40*\n'
            'end\n')
    graph = graph_from_text(text)
    edge = graph.contact(0, 1)
    assert edge.timestamps == [20, 40]
    assert edge.inferred_timestamps == {40}
    assert edge.strength == 0.5
    assert graph.nodes[0].properties == {'deg': 1.0}
    assert graph.find('b') == 1


def test_archive_version_mismatch(triangle):
    text = graph_to_text(triangle).replace('kcpipe-graph 1', 'kcpipe-graph 2', 1)
    with pytest.raises(ArchiveError) as info:
        graph_from_text(text)
    assert info.value.code == 'version_mismatch'


def test_archive_truncated(triangle):
    lines = graph_to_text(triangle).splitlines()
    with pytest.raises(ArchiveError) as info:
        graph_from_text('\n'.join(lines[:-3]) + '\n')
    assert info.value.code == 'truncated'


def test_feature_archive_round_trip(small_synthetic, tmp_path):
    features = build_features(small_synthetic)
    save_features(features, tmp_path / 'f.features')
    loaded = load_features(tmp_path / 'f.features')
    assert loaded.node_ids == features.node_ids
    assert loaded.names == features.names
    assert (loaded.values == features.values).all()


def test_saved_weights_reproduce_embeddings(small_synthetic, tmp_path):
    config = SageConfig(fanouts=[5, 3], dimensions=4)
    features = build_features(small_synthetic)
    neighborhoods = sample_neighborhoods(small_synthetic, config)
    weights = init_weights(4, config)
    save_weights(weights, tmp_path / 'w.weights')
    loaded = load_weights(tmp_path / 'w.weights')
    assert loaded.num_layers == 2
    assert np.array_equal(forward(features, neighborhoods, loaded, config).vectors,
                          forward(features, neighborhoods, weights, config).vectors)
