"""Second completion step: decay-based transitive strength and contagion."""

import logging
import math
from dataclasses import dataclass, field

from ..errors import GraphError
from ..models.graph import PERSON
from ..models.strength import PathStrength

logger = logging.getLogger(__name__)


def _clamp(value):
    return min(1.0, max(0.0, value))


def path_strength(contact_time, source_probability, model, hop=1):
    """Strength of one exposure of `contact_time` seconds to a source."""
    decay = math.exp(-model.beta * contact_time)
    if model.decay_mode == 'subtractive':
        value = source_probability - decay
    elif model.decay_mode == 'multiplicative':
        value = source_probability * (1.0 - decay)
    else:
        value = source_probability * (1.0 - decay) * math.exp(-model.beta * (hop - 1))
    return _clamp(value) if model.clamp else value


def aggregate_strength(per_path, model):
    """Combine per-path strengths; noisy-OR is 1 - prod(1 - s_i)."""
    values = list(per_path)
    if not values:
        return 0.0
    if len(values) == 1:
        return min(1.0, values[0]) if model.aggregator == 'sum' else values[0]
    if model.aggregator == 'noisy_or':
        return 1.0 - math.prod(1.0 - s for s in values)
    if model.aggregator == 'max':
        return max(values)
    if model.aggregator == 'avg':
        return math.fsum(values) / len(values)
    return min(1.0, math.fsum(values))


def bounded_strength(contact_time, model):
    """1 - e^(-beta t): a [0, 1] weight that grows with exposure."""
    return _clamp(1.0 - math.exp(-model.beta * contact_time))


def edge_strengths(graph, model):
    for edge in graph.contact_edges():
        edge.strength = bounded_strength(edge.total_contact_time, model)
    return graph


@dataclass
class ContagionReport:
    seeds: list
    model: dict
    cp: dict = field(default_factory=dict)
    paths: list = field(default_factory=list)
    at_risk: list = field(default_factory=list)

    def to_dict(self, names=None):
        names = names or {}
        return {
            'seeds': [names.get(s, s) for s in self.seeds],
            'model': self.model,
            'reached': len(self.cp),
            'at_risk_count': len(self.at_risk),
            'at_risk': [{'node': names.get(v, v), 'cp': self.cp[v]} for v in self.at_risk],
            'paths': [p.to_dict(names) for p in self.paths],
        }


def _paths_from(graph, seed, max_hops):
    """Simple contact paths from seed, yielded as lists of (node, edge)."""
    stack = [(seed, [], {seed})]
    while stack:
        node, path, visited = stack.pop()
        if path:
            yield path
        if len(path) == max_hops:
            continue
        for nxt, edge in reversed(graph.neighbors(node)):
            if nxt not in visited:
                stack.append((nxt, path + [(nxt, edge)], visited | {nxt}))


def propagate_contagion(graph, seeds, model):
    """Seed infection probabilities and propagate one round along contacts.

    Seeds get cp = 1. Every other node reached by a path of at most
    `model.max_hops` contact edges receives the aggregate of its per-path
    strengths as cp; cp above tau marks the node at risk.
    """
    seeds = sorted(set(seeds))
    for s in seeds:
        if s not in graph.nodes or PERSON not in graph.nodes[s].labels:
            raise GraphError(f'Unknown seed node {s!r}', code='not_found')

    report = ContagionReport(seeds=seeds, model=model.to_dict())
    if not seeds:
        return graph, report

    for s in seeds:
        graph.nodes[s].properties['cp'] = 1.0
    seed_set = set(seeds)

    per_target = {}
    for s in seeds:
        pairwise = {}
        for path in _paths_from(graph, s, model.max_hops):
            target = path[-1][0]
            if target in seed_set:
                continue
            probability = 1.0
            for hop, (_, edge) in enumerate(path, start=1):
                probability = path_strength(edge.total_contact_time, probability, model, hop)
            pairwise.setdefault(target, []).append(probability)
        for target in sorted(pairwise):
            values = pairwise[target]
            report.paths.append(PathStrength(source=s, target=target, per_path=values,
                                             aggregate=aggregate_strength(values, model)))
            per_target.setdefault(target, []).extend(values)

    for v in sorted(per_target):
        cp = aggregate_strength(per_target[v], model)
        report.cp[v] = cp
        graph.nodes[v].properties['cp'] = cp
        if cp > model.tau:
            report.at_risk.append(v)

    logger.info('Contagion from %d seeds reached %d nodes, %d above tau=%.3f',
                len(seeds), len(report.cp), len(report.at_risk), model.tau)
    return graph, report
