import copy
from dataclasses import dataclass, field

from ..errors import GraphError

CONTACT_INTERVAL = 20

HAS_CONTACT_WITH = 'HAS_CONTACT_WITH'
IS_PART_OF = 'IS_PART_OF'
RELATION_TYPES = (HAS_CONTACT_WITH, IS_PART_OF)

PERSON = 'Person'
DEPARTMENT = 'Department'

DIRECT = 'direct'
INFERRED = 'inferred'
PROVENANCES = (DIRECT, INFERRED)

PROPERTY_NAMES = ('cp', 'deg', 'total_contact_time', 'avg_contact_time')


@dataclass
class NodeRecord:
    id: int
    name: str
    labels: set = field(default_factory=set)
    properties: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'id': self.id,
            'name': self.name,
            'labels': sorted(self.labels),
            'properties': {k: self.properties[k] for k in sorted(self.properties)},
        }


@dataclass
class EdgeRecord:
    head: int
    tail: int
    relation: str
    timestamps: list = field(default_factory=list)
    # Subset of timestamps contributed by completion rather than observation
    inferred_timestamps: set = field(default_factory=set)
    strength: float = 1.0

    @property
    def total_contact_time(self):
        if self.relation != HAS_CONTACT_WITH:
            return 0
        return CONTACT_INTERVAL * len(self.timestamps)

    @property
    def provenance(self):
        if self.relation == HAS_CONTACT_WITH and self.timestamps \
                and len(self.inferred_timestamps) == len(self.timestamps):
            return INFERRED
        return DIRECT

    @property
    def direct_timestamps(self):
        return [t for t in self.timestamps if t not in self.inferred_timestamps]

    def other(self, v):
        return self.tail if v == self.head else self.head

    def to_dict(self):
        return {
            'head': self.head,
            'tail': self.tail,
            'relation': self.relation,
            'provenance': self.provenance,
            'strength': self.strength,
            'total_contact_time': self.total_contact_time,
            'timestamps': list(self.timestamps),
            'inferred_timestamps': sorted(self.inferred_timestamps),
        }


def _pair(i, j):
    return (i, j) if i < j else (j, i)


class KnowledgeGraph:
    """Person/Department knowledge graph with symmetric contact edges.

    Node ids are dense integers handed out in first-seen order. Contact edges
    are stored once per unordered pair and carry every interval-end timestamp
    at which the pair was in contact.
    """

    def __init__(self):
        self.nodes = {}
        self.relation_types = set(RELATION_TYPES)
        self._contacts = {}
        self._memberships = {}
        self._adjacency = {}
        self._by_name = {}

    # --- nodes ---

    def add_node(self, name, label):
        key = (label, name)
        if key in self._by_name:
            return self._by_name[key]
        node_id = len(self.nodes)
        self.nodes[node_id] = NodeRecord(id=node_id, name=name, labels={label})
        self._adjacency[node_id] = set()
        self._by_name[key] = node_id
        return node_id

    def add_person(self, name):
        return self.add_node(str(name), PERSON)

    def add_department(self, label):
        return self.add_node(str(label), DEPARTMENT)

    def find(self, name, label=PERSON):
        return self._by_name.get((label, str(name)))

    def node(self, v):
        try:
            return self.nodes[v]
        except KeyError:
            raise GraphError(f'Unknown node {v!r}', code='not_found')

    def node_ids(self, label=None):
        ids = sorted(self.nodes)
        if label is None:
            return ids
        return [v for v in ids if label in self.nodes[v].labels]

    def person_ids(self):
        return self.node_ids(PERSON)

    # --- edges ---

    def add_contact(self, i, j, t, provenance=DIRECT):
        """Record a 20-second contact between i and j ending at t.

        Returns True when t was newly appended to the pair's edge.
        """
        if i == j:
            raise GraphError(f'Self-loop contact on node {i}', code='self_loop')
        self.node(i)
        self.node(j)
        if t <= 0:
            raise GraphError(f'Contact time must be > 0, got {t}', code='invalid_time')
        if provenance not in PROVENANCES:
            raise GraphError(f'Unknown provenance {provenance!r}', code='invalid_provenance')

        key = _pair(i, j)
        edge = self._contacts.get(key)
        if edge is None:
            edge = EdgeRecord(head=key[0], tail=key[1], relation=HAS_CONTACT_WITH)
            self._contacts[key] = edge
            self._adjacency[i].add(j)
            self._adjacency[j].add(i)

        if t in edge.timestamps:
            return False
        if edge.timestamps and t > edge.timestamps[-1]:
            edge.timestamps.append(t)
        else:
            edge.timestamps.append(t)
            edge.timestamps.sort()
        if provenance == INFERRED:
            edge.inferred_timestamps.add(t)
        return True

    def add_membership(self, person, department):
        if person == department:
            raise GraphError(f'Self-loop membership on node {person}', code='self_loop')
        self.node(person)
        self.node(department)
        key = (person, department)
        if key not in self._memberships:
            self._memberships[key] = EdgeRecord(head=person, tail=department, relation=IS_PART_OF)
        return self._memberships[key]

    def contact(self, i, j):
        return self._contacts.get(_pair(i, j))

    def has_contact(self, i, j):
        return _pair(i, j) in self._contacts

    def contact_edges(self):
        return [self._contacts[k] for k in sorted(self._contacts)]

    def membership_edges(self):
        return [self._memberships[k] for k in sorted(self._memberships)]

    def edges(self):
        return self.contact_edges() + self.membership_edges()

    def neighbors(self, v, relation=HAS_CONTACT_WITH):
        """Neighbors of v over one relation, ascending by neighbor id."""
        self.node(v)
        if relation == HAS_CONTACT_WITH:
            return [(u, self._contacts[_pair(v, u)]) for u in sorted(self._adjacency[v])]
        if relation == IS_PART_OF:
            out = [(e.other(v), e) for (p, d), e in self._memberships.items() if v in (p, d)]
            return sorted(out, key=lambda pair: pair[0])
        raise GraphError(f'Unknown relation {relation!r}', code='not_found')

    def contact_neighbor_ids(self, v):
        return sorted(self._adjacency[v])

    def degree(self, v):
        return len(self._adjacency[v])

    @property
    def num_contact_edges(self):
        return len(self._contacts)

    def num_contact_events(self):
        return sum(len(e.timestamps) for e in self._contacts.values())

    def contact_timestamps(self):
        return sorted({t for e in self._contacts.values() for t in e.timestamps})

    # --- derived properties ---

    def compute_node_properties(self):
        """Fill deg, total and average contact time on every Person node."""
        for v in self.person_ids():
            record = self.nodes[v]
            deg = len(self._adjacency[v])
            total = sum(self._contacts[_pair(v, u)].total_contact_time for u in self._adjacency[v])
            record.properties['deg'] = float(deg)
            record.properties['total_contact_time'] = float(total)
            record.properties['avg_contact_time'] = float(total) / deg if deg else 0.0
            record.properties.setdefault('cp', 0.0)
        return self

    def copy(self):
        return copy.deepcopy(self)

    def to_dict(self):
        return {
            'nodes': [self.nodes[v].to_dict() for v in sorted(self.nodes)],
            'edges': [e.to_dict() for e in self.edges()],
        }

    def __eq__(self, other):
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return (f'<KnowledgeGraph nodes={len(self.nodes)} '
                f'contacts={len(self._contacts)} memberships={len(self._memberships)}>')
