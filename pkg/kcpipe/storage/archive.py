"""Versioned line-oriented text archives for graphs, features and weights.

Graph archive layout (tab separated, UTF-8, LF)::

    kcpipe-graph 1
    nodes <n>
    <id> <labels> <name> <key=value;...>
    edges <m>
    <head> <tail> <relation> <provenance> <strength> <t1,t2*,...>
    end

A `*` suffix marks a timestamp contributed by completion.
"""

import numpy as np

from ..errors import ArchiveError, InputError
from ..models.embedding import FeatureMatrix, LayerWeights
from ..models.graph import HAS_CONTACT_WITH, INFERRED, IS_PART_OF, KnowledgeGraph
from ..utils.files import write_text

GRAPH_MAGIC = 'kcpipe-graph'
MATRIX_MAGIC = 'kcpipe-matrix'
FORMAT_VERSION = 1


def _fmt(value):
    return repr(float(value))


def graph_to_text(graph):
    lines = [f'{GRAPH_MAGIC} {FORMAT_VERSION}', f'nodes {len(graph.nodes)}']
    for v in graph.node_ids():
        record = graph.nodes[v]
        props = ';'.join(f'{k}={_fmt(record.properties[k])}' for k in sorted(record.properties))
        lines.append('\t'.join([str(v), ','.join(sorted(record.labels)), record.name, props]))

    edges = graph.edges()
    lines.append(f'edges {len(edges)}')
    for edge in edges:
        stamps = ','.join(f'{t}*' if t in edge.inferred_timestamps else str(t)
                          for t in edge.timestamps)
        lines.append('\t'.join([str(edge.head), str(edge.tail), edge.relation, edge.provenance,
                                _fmt(edge.strength), stamps]))
    lines.append('end')
    return '\n'.join(lines) + '\n'


def serialize_graph(graph, path):
    write_text(path, graph_to_text(graph))


def _section_count(line, name, number):
    parts = line.split(' ')
    if len(parts) != 2 or parts[0] != name:
        raise ArchiveError(f'line {number}: expected "{name} <count>"', code='malformed')
    try:
        return int(parts[1])
    except ValueError:
        raise ArchiveError(f'line {number}: bad {name} count', code='malformed')


def _check_header(line, magic):
    parts = line.split(' ') if line else []
    if len(parts) != 2 or parts[0] != magic:
        raise ArchiveError(f'not a {magic} archive', code='malformed')
    if parts[1] != str(FORMAT_VERSION):
        raise ArchiveError(f'archive version {parts[1]} is not supported '
                           f'(expected {FORMAT_VERSION})', code='version_mismatch')


def graph_from_text(text):
    lines = text.split('\n')
    if lines and lines[-1] == '':
        lines.pop()
    if not lines:
        raise ArchiveError('empty graph archive', code='truncated')
    _check_header(lines[0], GRAPH_MAGIC)

    cursor = 1

    def take():
        nonlocal cursor
        if cursor >= len(lines):
            raise ArchiveError(f'archive ends at line {cursor}', code='truncated')
        line = lines[cursor]
        cursor += 1
        return line

    graph = KnowledgeGraph()
    n_nodes = _section_count(take(), 'nodes', cursor)
    for _ in range(n_nodes):
        line = take()
        fields = line.split('\t')
        if len(fields) != 4:
            raise ArchiveError(f'line {cursor}: node row needs 4 fields', code='malformed')
        node_id, labels, name, props = fields
        label_list = labels.split(',') if labels else []
        if not label_list:
            raise ArchiveError(f'line {cursor}: node without label', code='malformed')
        if not node_id.isdigit() or graph.add_node(name, label_list[0]) != int(node_id):
            raise ArchiveError(f'line {cursor}: node ids must be dense and ascending',
                               code='malformed')
        record = graph.nodes[int(node_id)]
        record.labels.update(label_list)
        for item in filter(None, props.split(';')):
            key, _, value = item.partition('=')
            record.properties[key] = float(value)

    n_edges = _section_count(take(), 'edges', cursor)
    for _ in range(n_edges):
        fields = take().split('\t')
        if len(fields) != 6:
            raise ArchiveError(f'line {cursor}: edge row needs 6 fields', code='malformed')
        head, tail, relation, provenance, strength, stamps = fields
        try:
            head, tail = int(head), int(tail)
            if relation == HAS_CONTACT_WITH:
                for token in filter(None, stamps.split(',')):
                    inferred = token.endswith('*')
                    graph.add_contact(head, tail, int(token.rstrip('*')),
                                      INFERRED if inferred else 'direct')
                edge = graph.contact(head, tail)
            elif relation == IS_PART_OF:
                edge = graph.add_membership(head, tail)
            else:
                raise ArchiveError(f'line {cursor}: unknown relation {relation}', code='malformed')
            if edge is None or edge.provenance != provenance:
                raise ArchiveError(f'line {cursor}: inconsistent edge row', code='malformed')
            edge.strength = float(strength)
        except (ValueError, InputError) as exc:
            if isinstance(exc, ArchiveError):
                raise
            raise ArchiveError(f'line {cursor}: {exc}', code='malformed')

    if take() != 'end':
        raise ArchiveError(f'line {cursor}: expected end marker', code='malformed')
    return graph


def deserialize_graph(path):
    try:
        with open(path, encoding='utf-8', newline='') as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f'Cannot read {path}: {exc.strerror or exc}', code='unreadable')
    return graph_from_text(text)


# --- matrices ---

def matrix_to_text(kind, names, blocks):
    """blocks: list of (label, 2-D array)."""
    lines = [f'{MATRIX_MAGIC} {FORMAT_VERSION}', f'kind {kind}', 'names ' + ','.join(names),
             f'blocks {len(blocks)}']
    for label, array in blocks:
        array = np.atleast_2d(np.asarray(array, dtype=np.float64))
        lines.append(f'block {label} {array.shape[0]} {array.shape[1]}')
        for row in array:
            lines.append(' '.join(_fmt(x) for x in row))
    lines.append('end')
    return '\n'.join(lines) + '\n'


def matrix_from_text(text, kind):
    lines = text.split('\n')
    if lines and lines[-1] == '':
        lines.pop()
    if len(lines) < 4:
        raise ArchiveError('matrix archive is truncated', code='truncated')
    _check_header(lines[0], MATRIX_MAGIC)
    if lines[1] != f'kind {kind}':
        raise ArchiveError(f'expected a {kind} archive, found "{lines[1]}"', code='malformed')
    names = [n for n in lines[2][len('names '):].split(',') if n]
    count = _section_count(lines[3], 'blocks', 4)
    blocks, cursor = [], 4
    for _ in range(count):
        if cursor >= len(lines):
            raise ArchiveError('matrix archive is truncated', code='truncated')
        parts = lines[cursor].split(' ')
        if len(parts) != 4 or parts[0] != 'block':
            raise ArchiveError(f'line {cursor + 1}: expected block header', code='malformed')
        label, rows, cols = parts[1], int(parts[2]), int(parts[3])
        cursor += 1
        if cursor + rows > len(lines):
            raise ArchiveError('matrix archive is truncated', code='truncated')
        data = [[float(x) for x in lines[cursor + r].split(' ')] for r in range(rows)]
        cursor += rows
        array = np.array(data, dtype=np.float64).reshape(rows, cols)
        blocks.append((label, array))
    if cursor >= len(lines) or lines[cursor] != 'end':
        raise ArchiveError('matrix archive is truncated', code='truncated')
    return names, blocks


def save_features(features, path):
    block = np.column_stack([np.asarray(features.node_ids, dtype=np.float64), features.values])
    write_text(path, matrix_to_text('features', features.names, [('rows', block)]))


def load_features(path):
    with open(path, encoding='utf-8') as fh:
        names, blocks = matrix_from_text(fh.read(), 'features')
    block = blocks[0][1]
    return FeatureMatrix(node_ids=[int(x) for x in block[:, 0]], values=block[:, 1:], names=names)


def save_weights(weights, path):
    blocks = [(f'W{k + 1}', w) for k, w in enumerate(weights.matrices)]
    write_text(path, matrix_to_text('weights', [], blocks))


def load_weights(path):
    with open(path, encoding='utf-8') as fh:
        _, blocks = matrix_from_text(fh.read(), 'weights')
    return LayerWeights([array for _, array in blocks])
