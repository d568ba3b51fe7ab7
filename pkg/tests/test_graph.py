import pytest

from kcpipe.errors import GraphError
from kcpipe.models import KnowledgeGraph
from kcpipe.models.graph import DIRECT, INFERRED, IS_PART_OF


def people(n):
    graph = KnowledgeGraph()
    for v in range(n):
        graph.add_person(v)
    return graph


def test_single_contact_is_symmetric():
    graph = people(3)
    graph.add_contact(1, 2, 40)
    edge = graph.contact(2, 1)
    assert edge is graph.contact(1, 2)
    assert edge.timestamps == [40]
    assert edge.total_contact_time == 20
    assert graph.num_contact_edges == 1


def test_repeated_contact_is_idempotent():
    once, twice = people(3), people(3)
    once.add_contact(1, 2, 40)
    twice.add_contact(1, 2, 40)
    assert twice.add_contact(2, 1, 40) is False
    assert once == twice


def test_timestamps_accumulate_in_order():
    graph = people(3)
    graph.add_contact(1, 2, 60)
    graph.add_contact(1, 2, 40)
    edge = graph.contact(1, 2)
    assert edge.timestamps == [40, 60]
    assert edge.total_contact_time == 40


@pytest.mark.parametrize('i, j, t, code', [
    (1, 1, 40, 'self_loop'),
    (1, 9, 40, 'not_found'),
    (1, 2, 0, 'invalid_time'),
])
def test_add_contact_rejects(i, j, t, code):
    graph = people(3)
    with pytest.raises(GraphError) as info:
        graph.add_contact(i, j, t)
    assert info.value.code == code
    assert graph.num_contact_edges == 0


def test_neighbors_ascending():
    graph = people(4)
    graph.add_contact(2, 3, 20)
    graph.add_contact(2, 1, 20)
    assert [u for u, _ in graph.neighbors(2)] == [1, 3]
    assert graph.neighbors(0) == []


def test_neighbors_after_repeated_contact():
    graph = people(4)
    graph.add_contact(1, 2, 20)
    graph.add_contact(1, 3, 20)
    graph.add_contact(1, 2, 40)
    neighbors = graph.neighbors(1)
    assert [u for u, _ in neighbors] == [2, 3]
    assert len(neighbors[0][1].timestamps) == 2


def test_neighbors_unknown_node():
    with pytest.raises(GraphError) as info:
        people(2).neighbors(5)
    assert info.value.code == 'not_found'


def test_membership_neighbors():
    graph = people(2)
    department = graph.add_department('D1')
    graph.add_membership(0, department)
    assert [u for u, _ in graph.neighbors(0, IS_PART_OF)] == [department]
    assert graph.neighbors(1, IS_PART_OF) == []


def test_node_properties():
    graph = people(4)
    graph.add_contact(0, 1, 20)
    graph.add_contact(0, 1, 40)
    graph.add_contact(0, 2, 20)
    graph.compute_node_properties()
    props = graph.nodes[0].properties
    assert props['deg'] == 2
    assert props['total_contact_time'] == 60
    assert props['avg_contact_time'] == 30
    isolated = graph.nodes[3].properties
    assert (isolated['deg'], isolated['total_contact_time'], isolated['avg_contact_time']) == (0, 0, 0)
    assert isolated['cp'] == 0.0


def test_triangle_properties(triangle):
    for v in triangle.person_ids():
        props = triangle.nodes[v].properties
        assert props['deg'] == 2
        assert props['total_contact_time'] == 40
        assert props['avg_contact_time'] == 20


def test_provenance_requires_all_timestamps_inferred():
    graph = people(2)
    graph.add_contact(0, 1, 20, INFERRED)
    assert graph.contact(0, 1).provenance == INFERRED
    graph.add_contact(0, 1, 40, DIRECT)
    edge = graph.contact(0, 1)
    assert edge.provenance == DIRECT
    assert edge.direct_timestamps == [40]


def test_copy_is_independent(triangle):
    clone = triangle.copy()
    clone.add_contact(0, 1, 60)
    assert triangle.contact(0, 1).timestamps == [20]
    assert clone != triangle
