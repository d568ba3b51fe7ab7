"""Second-order biased random walks over the contact network."""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..errors import InputError
from ..models.embedding import WalkCorpus
from ..utils.seeds import make_rng

logger = logging.getLogger(__name__)


def search_bias(graph, prev, x, config):
    """alpha_pq for stepping to x, given the walker came from prev."""
    if prev is None:
        return 1.0
    if x == prev:
        return 1.0 / config.p
    if graph.has_contact(prev, x):
        return 1.0
    return 1.0 / config.q


def transition_distribution(graph, prev, current, config):
    """(neighbor ids, probabilities) for the next step out of current.

    The unnormalized score of neighbor x is alpha_pq(prev, x) * w(current, x),
    times the edge strength when config.use_strength is set; w is the total
    contact time of the edge. A dangling node yields empty arrays.
    """
    neighbors = graph.neighbors(current)
    if not neighbors:
        return np.empty(0, dtype=np.int64), np.empty(0)
    ids = np.fromiter((x for x, _ in neighbors), dtype=np.int64, count=len(neighbors))
    scores = np.empty(len(neighbors))
    for k, (x, edge) in enumerate(neighbors):
        score = search_bias(graph, prev, x, config) * edge.total_contact_time
        if config.use_strength:
            score = score * edge.strength
        scores[k] = score
    total = scores.sum()
    if total <= 0:
        return np.empty(0, dtype=np.int64), np.empty(0)
    return ids, scores / total


class TransitionTable:
    """Lazily cached transition distributions keyed by (prev, current)."""

    def __init__(self, graph, config):
        self.graph = graph
        self.config = config
        self._cache = {}

    def get(self, prev, current):
        key = (prev, current)
        entry = self._cache.get(key)
        if entry is None:
            ids, probs = transition_distribution(self.graph, prev, current, self.config)
            entry = (ids, np.cumsum(probs))
            self._cache[key] = entry
        return entry

    def probability(self, prev, current, nxt):
        ids, cumulative = self.get(prev, current)
        hit = np.nonzero(ids == nxt)[0]
        if not len(hit):
            return 0.0
        k = hit[0]
        return float(cumulative[k] - (cumulative[k - 1] if k else 0.0))


def _walk(table, start, walk_index, config):
    rng = make_rng(config.seed, 'walk', start, walk_index)
    walk, prev = [start], None
    while len(walk) < config.walk_length:
        ids, cumulative = table.get(prev, walk[-1])
        if not len(ids):
            break
        k = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side='right'))
        prev = walk[-1]
        walk.append(int(ids[min(k, len(ids) - 1)]))
    return walk


def _walks_from(table, start, config):
    return [_walk(table, start, index, config) for index in range(config.num_walks_per_node)]


def generate_walks(graph, config, node_ids=None, threads=1):
    """num_walks_per_node walks from every Person node, ascending by start id.

    Each walk draws from its own RNG stream derived from (seed, start, index),
    so the corpus does not depend on the thread count.
    """
    node_ids = graph.person_ids() if node_ids is None else list(node_ids)
    if not node_ids:
        raise InputError('Cannot generate walks on an empty graph', code='empty_graph')
    table = TransitionTable(graph, config)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_node = list(pool.map(lambda v: _walks_from(table, v, config), node_ids))
    else:
        per_node = [_walks_from(table, v, config) for v in node_ids]
    walks = [walk for batch in per_node for walk in batch]
    logger.info('Generated %d walks (length <= %d, p=%g, q=%g, strength=%s)',
                len(walks), config.walk_length, config.p, config.q, config.use_strength)
    return WalkCorpus(walks=walks, walk_length=config.walk_length,
                      num_walks_per_node=config.num_walks_per_node, config=config.to_dict())


def visit_probability(corpus, node_ids=()):
    """Share of the k * T walk slots that land on each node.

    Nodes listed in node_ids but never visited are reported with 0.
    """
    if not corpus.walks:
        raise InputError('Visit probability needs a non-empty corpus', code='empty_corpus')
    counts = {v: 0 for v in node_ids}
    for walk in corpus.walks:
        for v in walk:
            counts[v] = counts.get(v, 0) + 1
    denominator = len(corpus.walks) * corpus.walk_length
    return {v: counts[v] / denominator for v in sorted(counts)}


def walk_probability(table, walk):
    """Probability of a walk under a transition table (start node given)."""
    probability, prev = 1.0, None
    for current, nxt in zip(walk, walk[1:]):
        probability *= table.probability(prev, current, nxt)
        prev = current
    return probability
