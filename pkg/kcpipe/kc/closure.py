"""First completion step: per-timestamp transitive closure of co-presence."""

import logging
from collections import Counter, defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

from ..models.graph import INFERRED
from ..models.strength import ClosureStats

logger = logging.getLogger(__name__)


def contacts_by_timestamp(graph):
    """Map each interval-end t to the contact pairs active in that interval."""
    grouped = defaultdict(list)
    for edge in graph.contact_edges():
        for t in edge.timestamps:
            grouped[t].append((edge.head, edge.tail))
    return grouped


def connected_components(pairs):
    """BFS components of the graph spanned by pairs, each sorted ascending."""
    adjacency = defaultdict(set)
    for a, b in pairs:
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen, components = set(), []
    for start in sorted(adjacency):
        if start in seen:
            continue
        seen.add(start)
        queue, component = deque([start]), [start]
        while queue:
            node = queue.popleft()
            for nxt in sorted(adjacency[node]):
                if nxt not in seen:
                    seen.add(nxt)
                    component.append(nxt)
                    queue.append(nxt)
        components.append(sorted(component))
    return components


def complete_timestamp(pairs):
    """Missing pairs of every component at one timestamp, plus component sizes."""
    present = {(min(a, b), max(a, b)) for a, b in pairs}
    missing, sizes = [], []
    for component in connected_components(pairs):
        sizes.append(len(component))
        for a, b in combinations(component, 2):
            if (a, b) not in present:
                missing.append((a, b))
    return missing, sizes


def transitive_closure_step(graph, threads=1):
    """Return (KG_KC, stats); the input graph is left untouched."""
    completed = graph.copy()
    grouped = contacts_by_timestamp(graph)
    timestamps = sorted(grouped)

    stats = ClosureStats(
        direct_pairs=graph.num_contact_edges,
        direct_events=graph.num_contact_events(),
        timestamps=len(timestamps),
    )
    if threads > 1 and len(timestamps) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(complete_timestamp, (grouped[t] for t in timestamps)))
    else:
        results = [complete_timestamp(grouped[t]) for t in timestamps]

    sizes = Counter()
    for t, (missing, component_sizes) in zip(timestamps, results):
        sizes.update(component_sizes)
        for a, b in missing:
            if not completed.has_contact(a, b):
                stats.inferred_pairs += 1
            if completed.add_contact(a, b, t, INFERRED):
                stats.inferred_events += 1
    stats.component_sizes = dict(sizes)

    completed.compute_node_properties()
    logger.info('Closure over %d timestamps: %d -> %d contact pairs (+%.1f%%), %d inferred events',
                stats.timestamps, stats.direct_pairs, stats.total_pairs,
                100.0 * stats.growth_ratio, stats.inferred_events)
    return completed, stats
