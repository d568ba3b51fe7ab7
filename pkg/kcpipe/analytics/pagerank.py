"""Power-iteration PageRank over the knowledge graph."""

import logging

import numpy as np
from scipy import sparse

from ..errors import InputError
from ..models.report import PageRankResult, RankingComparison

logger = logging.getLogger(__name__)


def link_matrix(graph, node_ids, include_membership=False):
    """Row-normalized transition matrix; contacts count as two directed links."""
    index = {v: k for k, v in enumerate(node_ids)}
    rows, cols = [], []
    edges = graph.contact_edges()
    if include_membership:
        edges = edges + graph.membership_edges()
    for edge in edges:
        if edge.head in index and edge.tail in index:
            a, b = index[edge.head], index[edge.tail]
            rows.extend([a, b])
            cols.extend([b, a])
    n = len(node_ids)
    links = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    links.data[:] = 1.0
    out_degree = np.asarray(links.sum(axis=1)).ravel()
    inverse = np.divide(1.0, out_degree, out=np.zeros(n), where=out_degree > 0)
    return sparse.diags(inverse) @ links, out_degree


def pagerank(graph, config):
    """PR(v) = (1 - a)/|V| + a * sum_u PR(u)/out(u); dangling mass spread evenly.

    per_node normalization multiplies by |V| so a uniform graph scores 1.0.
    """
    node_ids = graph.node_ids() if config.include_membership else graph.person_ids()
    n = len(node_ids)
    if n == 0:
        raise InputError('PageRank needs a non-empty graph', code='empty_graph')
    transition, out_degree = link_matrix(graph, node_ids, config.include_membership)
    transposed = transition.T.tocsr()
    dangling = out_degree == 0
    alpha = config.alpha

    x = np.full(n, 1.0 / n)
    converged, iterations = False, 0
    for iterations in range(1, config.max_iterations + 1):
        previous = x
        x = alpha * (transposed @ previous + previous[dangling].sum() / n) + (1.0 - alpha) / n
        if np.abs(x - previous).sum() < config.tolerance:
            converged = True
            break
    if not converged:
        logger.warning('PageRank did not converge in %d iterations', config.max_iterations)

    if config.normalization == 'per_node':
        x = x * n
    scores = {v: float(s) for v, s in zip(node_ids, x)}
    return PageRankResult(scores=scores, converged=converged, iterations=iterations,
                          normalization=config.normalization)


def ranking(scores):
    """Node ids by descending score, ties broken by ascending id."""
    return sorted(scores, key=lambda v: (-scores[v], v))


def select_seeds(scores, k=5):
    return ranking(scores)[:k]


def top_k_comparison(scores_raw, scores_kc, k=10):
    if set(scores_raw) != set(scores_kc):
        raise InputError('Score maps cover different node sets', code='node_set_mismatch')
    k = max(0, min(k, len(scores_raw)))
    order_raw, order_kc = ranking(scores_raw), ranking(scores_kc)
    rank_raw = {v: r for r, v in enumerate(order_raw)}
    rank_kc = {v: r for r, v in enumerate(order_kc)}
    top_raw, top_kc = order_raw[:k], order_kc[:k]
    union = set(top_raw) | set(top_kc)
    overlap = len(set(top_raw) & set(top_kc)) / len(union) if union else 1.0
    return RankingComparison(
        top_raw=[(v, scores_raw[v]) for v in top_raw],
        top_kc=[(v, scores_kc[v]) for v in top_kc],
        displacement={v: rank_raw[v] - rank_kc[v] for v in sorted(scores_raw)},
        overlap=overlap,
        k=k,
    )
