"""Reading the two-file contact dataset (`t i j` contacts, `i D_i` metadata)."""

import logging
from dataclasses import dataclass

from ..errors import InputError
from ..models.graph import DEPARTMENT, DIRECT, KnowledgeGraph
from ..models.report import IngestReport

logger = logging.getLogger(__name__)

MALFORMED_LIMIT = 0.5


@dataclass(frozen=True)
class ContactFileRow:
    t: int
    i: str
    j: str

    @property
    def pair(self):
        return tuple(sorted((self.i, self.j), key=id_key))

    def sort_key(self):
        a, b = self.pair
        return (self.t, id_key(a), id_key(b))


@dataclass(frozen=True)
class MetadataRow:
    i: str
    department: str


def id_key(raw):
    """Order numeric ids numerically, everything else after them as text."""
    try:
        return (0, int(raw), '')
    except ValueError:
        return (1, 0, raw)


def parse_contacts(lines, report=None):
    """Parse contact lines into rows sorted by (t, min(i,j), max(i,j))."""
    report = report or IngestReport()
    rows, seen = [], set()
    for line in lines:
        report.total_lines += 1
        fields = line.split()
        if not fields:
            report.blank += 1
            continue
        if len(fields) < 3:
            report.malformed += 1
            continue
        try:
            t = int(fields[0])
        except ValueError:
            report.malformed += 1
            continue
        i, j = fields[1], fields[2]
        if t <= 0:
            report.malformed += 1
            continue
        if i == j:
            report.self_loops += 1
            continue
        row = ContactFileRow(t=t, i=i, j=j)
        key = (t,) + row.pair
        if key in seen:
            report.duplicates += 1
            continue
        seen.add(key)
        rows.append(row)
        report.valid += 1

    content = report.total_lines - report.blank
    if content == 0:
        raise InputError('Contact file is empty', code='empty_input')
    if report.malformed > MALFORMED_LIMIT * content:
        raise InputError(
            f'{report.malformed} of {content} contact lines are malformed; '
            'is this a `t i j` contact file?', code='malformed_majority')
    if report.malformed:
        logger.warning('Skipped %d malformed contact lines', report.malformed)

    rows.sort(key=ContactFileRow.sort_key)
    report.events = len(rows)
    report.distinct_pairs = len({row.pair for row in rows})
    return rows, report


def parse_metadata(lines):
    rows, seen = [], {}
    for number, line in enumerate(lines, start=1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) < 2:
            logger.warning('Metadata line %d has no department, skipped', number)
            continue
        person, department = fields[0], fields[1]
        if person in seen:
            if seen[person] != department:
                logger.warning('Person %s listed in %s and %s; keeping the first',
                               person, seen[person], department)
            continue
        seen[person] = department
        rows.append(MetadataRow(i=person, department=department))
    return rows


def read_lines(path):
    try:
        with open(path, encoding='utf-8') as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise InputError(f'Cannot read {path}: {exc.strerror or exc}', code='unreadable')


def build_kg(contacts, metadata, report=None):
    """Build KG_raw: Person and Department nodes, memberships and contacts."""
    report = report or IngestReport()
    graph = KnowledgeGraph()

    for row in contacts:
        graph.add_person(row.i)
        graph.add_person(row.j)
    for row in metadata:
        if graph.find(row.i) is None:
            logger.warning('Metadata references person %s with no contacts', row.i)
            report.unknown_metadata_people += 1
            graph.add_person(row.i)

    for row in metadata:
        department = graph.add_department(row.department)
        graph.add_membership(graph.find(row.i), department)

    for row in contacts:
        graph.add_contact(graph.find(row.i), graph.find(row.j), row.t, DIRECT)

    graph.compute_node_properties()

    report.people = len(graph.person_ids())
    report.departments = len(graph.node_ids(DEPARTMENT))
    report.contact_edges = graph.num_contact_edges
    report.events = graph.num_contact_events()
    report.distinct_pairs = graph.num_contact_edges
    logger.info('Built KG_raw: %d people, %d departments, %d contact edges, %d events',
                report.people, report.departments, report.contact_edges, report.events)
    return graph
