"""GraphSAGE with a mean aggregator over sampled contact neighborhoods."""

import logging

import numpy as np
from scipy import sparse
from scipy.special import expit, log_expit

from ..errors import InputError, ShapeError
from ..models.embedding import EmbeddingMatrix, FeatureMatrix, LayerWeights, SampledNeighborhoods
from ..models.graph import PROPERTY_NAMES
from ..utils.seeds import make_rng

logger = logging.getLogger(__name__)

NOISE_EXPONENT = 0.75
MAX_BACKTRACKS = 10


def build_features(graph, node_ids=None):
    """Z-scored [cp, deg, T, T_avg] per Person node; constant columns become 0."""
    node_ids = graph.person_ids() if node_ids is None else list(node_ids)
    raw = np.array([[graph.nodes[v].properties.get(name, 0.0) for name in PROPERTY_NAMES]
                    for v in node_ids], dtype=np.float64).reshape(len(node_ids), len(PROPERTY_NAMES))
    mean = raw.mean(axis=0) if len(node_ids) else np.zeros(len(PROPERTY_NAMES))
    std = raw.std(axis=0) if len(node_ids) else np.zeros(len(PROPERTY_NAMES))
    safe = np.where(std > 0, std, 1.0)
    values = np.where(std > 0, (raw - mean) / safe, 0.0)
    return FeatureMatrix(node_ids=node_ids, values=values, names=list(PROPERTY_NAMES))


def sample_neighborhoods(graph, config, seed=None, node_ids=None):
    """Uniform sampling without replacement, at most fanouts[k] per node.

    A node whose degree fits the budget keeps its full neighborhood. Sampled
    members are stored in ascending id order with their edge strengths.
    """
    seed = config.seed if seed is None else seed
    node_ids = graph.person_ids() if node_ids is None else list(node_ids)
    layers = []
    for k, fanout in enumerate(config.fanouts):
        layer = {}
        for v in node_ids:
            neighbors = graph.neighbors(v)
            if len(neighbors) > fanout:
                rng = make_rng(seed, 'sage-sample', k, v)
                picked = np.sort(rng.choice(len(neighbors), size=fanout, replace=False))
                neighbors = [neighbors[i] for i in picked]
            layer[v] = ([u for u, _ in neighbors], [edge.strength for _, edge in neighbors])
        layers.append(layer)
    return SampledNeighborhoods(node_ids=node_ids, layers=layers)


def aggregation_matrix(neighborhoods, k, config):
    """Row-stochastic (or strength-scaled) sparse operator for layer k's mean."""
    index = {v: row for row, v in enumerate(neighborhoods.node_ids)}
    rows, cols, data = [], [], []
    for v in neighborhoods.node_ids:
        members, strengths = neighborhoods.layers[k][v]
        if not members:
            continue
        if config.use_strength:
            weights = [s * (1.0 / len(members)) for s in strengths]
        else:
            weights = [1.0 / len(members)] * len(members)
        for u, w in zip(members, weights):
            if u not in index:
                continue
            rows.append(index[v])
            cols.append(index[u])
            data.append(w)
    n = len(neighborhoods.node_ids)
    matrix = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    # Fixed summation order regardless of member order
    matrix.sort_indices()
    return matrix


def init_weights(in_dim, config, seed=None):
    seed = config.seed if seed is None else seed
    rng = make_rng(seed, 'sage-weights')
    matrices, dim = [], in_dim
    for _ in config.fanouts:
        fan_in = 2 * dim
        bound = 1.0 / np.sqrt(fan_in)
        matrices.append(rng.uniform(-bound, bound, size=(config.dimensions, fan_in)))
        dim = config.dimensions
    return LayerWeights(matrices)


def _check_shapes(features, neighborhoods, weights):
    if neighborhoods.node_ids != features.node_ids:
        raise ShapeError('neighborhood node order differs from feature rows')
    if weights.num_layers != neighborhoods.num_layers:
        raise ShapeError(f'{weights.num_layers} weight layers for '
                         f'{neighborhoods.num_layers} sampled layers')
    dim = features.values.shape[1]
    for k, w in enumerate(weights.matrices, start=1):
        if w.ndim != 2 or w.shape[1] != 2 * dim:
            raise ShapeError(f'layer {k}: weight shape {w.shape} does not accept '
                             f'input dimension {dim} (expected (*, {2 * dim}))')
        dim = w.shape[0]


def _forward_trace(features, neighborhoods, weights, config):
    _check_shapes(features, neighborhoods, weights)
    h = features.values
    trace = []
    for k, w in enumerate(weights.matrices):
        agg = aggregation_matrix(neighborhoods, k, config)
        stacked = np.hstack([h, agg @ h])
        pre = stacked @ w.T
        h = np.maximum(pre, 0.0)
        trace.append((agg, stacked, pre))
    norms = np.linalg.norm(h, axis=1)
    out = h / np.where(norms > 0, norms, 1.0)[:, None]
    return out, h, norms, trace


def forward(features, neighborhoods, weights, config):
    """Embed every node; final rows are L2-normalized (all-zero rows stay 0)."""
    out, _, _, _ = _forward_trace(features, neighborhoods, weights, config)
    return EmbeddingMatrix(node_ids=list(features.node_ids), vectors=out, generator='graphsage',
                           seed=config.seed)


def training_pairs(graph, config, node_ids, seed=None):
    """Positive pairs from co-occurrence on short uniform walks, plus negatives.

    Negatives are drawn in proportion to degree^0.75.
    """
    seed = config.seed if seed is None else seed
    rng = make_rng(seed, 'sage-pairs')
    index = {v: row for row, v in enumerate(node_ids)}
    positives = []
    for v in node_ids:
        walk = [v]
        while len(walk) < config.walk_length:
            neighbors = graph.contact_neighbor_ids(walk[-1])
            if not neighbors:
                break
            walk.append(neighbors[int(rng.integers(len(neighbors)))])
        for a in range(len(walk)):
            for b in range(a + 1, min(len(walk), a + config.context_window + 1)):
                if walk[a] != walk[b]:
                    positives.append((index[walk[a]], index[walk[b]]))
    positives = np.array(positives, dtype=np.int64).reshape(-1, 2)

    degrees = np.array([graph.degree(v) for v in node_ids], dtype=np.float64)
    weights = degrees ** NOISE_EXPONENT
    if weights.sum() <= 0:
        weights = np.ones(len(node_ids))
    noise = weights / weights.sum()
    negatives = rng.choice(len(node_ids), size=(len(positives), config.negative_samples), p=noise)
    return positives, negatives


def loss_and_gradients(features, neighborhoods, weights, config, positives, negatives):
    """Unsupervised loss (mean over positive pairs) and d loss / d W^(k)."""
    out, h, norms, trace = _forward_trace(features, neighborhoods, weights, config)
    if not len(positives):
        return 0.0, [np.zeros_like(w) for w in weights.matrices]
    u, v = positives[:, 0], positives[:, 1]
    pos = np.einsum('pd,pd->p', out[u], out[v])
    neg = np.einsum('pd,pkd->pk', out[u], out[negatives])
    count = len(positives)
    loss = (-log_expit(pos).sum() - log_expit(-neg).sum()) / count

    g_pos = (expit(pos) - 1.0) / count
    g_neg = expit(neg) / count
    d_out = np.zeros_like(out)
    np.add.at(d_out, u, g_pos[:, None] * out[v] + np.einsum('pk,pkd->pd', g_neg, out[negatives]))
    np.add.at(d_out, v, g_pos[:, None] * out[u])
    np.add.at(d_out, negatives.ravel(),
              (g_neg[:, :, None] * out[u][:, None, :]).reshape(-1, out.shape[1]))

    # Back through the row normalization; zero rows pass no gradient
    safe = np.where(norms > 0, norms, 1.0)[:, None]
    radial = np.einsum('nd,nd->n', out, d_out)[:, None]
    d_h = np.where(norms[:, None] > 0, (d_out - out * radial) / safe, 0.0)

    grads = [None] * weights.num_layers
    for k in range(weights.num_layers - 1, -1, -1):
        agg, stacked, pre = trace[k]
        d_pre = d_h * (pre > 0)
        grads[k] = d_pre.T @ stacked
        d_stacked = d_pre @ weights.matrices[k]
        half = d_stacked.shape[1] // 2
        d_h = d_stacked[:, :half] + agg.T @ d_stacked[:, half:]
    return float(loss), grads


def dead_rows(features, neighborhoods, weights, config):
    """Number of nodes whose final ReLU output is all zero."""
    _, _, norms, _ = _forward_trace(features, neighborhoods, weights, config)
    return int(np.count_nonzero(norms == 0))


def train_unsupervised(graph, features, config, neighborhoods=None):
    """Full-batch gradient descent on the unsupervised graph loss.

    A step that would leave more all-zero output rows than the initialization
    had is retried at half the learning rate, up to MAX_BACKTRACKS times, and
    skipped after that. Returns (weights, loss history); zero epochs returns
    the initialization.
    """
    node_ids = list(features.node_ids)
    if len(node_ids) < 2:
        raise InputError('GraphSAGE training needs at least two nodes', code='graph_too_small')
    if neighborhoods is None:
        neighborhoods = sample_neighborhoods(graph, config, node_ids=node_ids)
    weights = init_weights(features.values.shape[1], config)
    positives, negatives = training_pairs(graph, config, node_ids)
    allowed = dead_rows(features, neighborhoods, weights, config)

    history = []
    for epoch in range(config.epochs):
        loss, grads = loss_and_gradients(features, neighborhoods, weights, config,
                                         positives, negatives)
        history.append(loss)
        step = config.learning_rate
        for _ in range(MAX_BACKTRACKS):
            trial = LayerWeights([w - step * g for w, g in zip(weights.matrices, grads)])
            if dead_rows(features, neighborhoods, trial, config) <= allowed:
                weights = trial
                break
            step /= 2
        else:
            logger.debug('GraphSAGE epoch %d: step skipped, every trial added dead rows',
                         epoch + 1)
        if epoch == 0 or (epoch + 1) % 10 == 0 or epoch + 1 == config.epochs:
            logger.info('GraphSAGE epoch %d/%d: loss %.5f', epoch + 1, config.epochs, loss)
    if config.epochs:
        history.append(loss_and_gradients(features, neighborhoods, weights, config,
                                          positives, negatives)[0])
    return weights, history


def embed_graph(graph, config, node_ids=None):
    """Features, sampling, training and a final forward pass in one call."""
    features = build_features(graph, node_ids)
    neighborhoods = sample_neighborhoods(graph, config, node_ids=features.node_ids)
    weights, history = train_unsupervised(graph, features, config, neighborhoods)
    embedding = forward(features, neighborhoods, weights, config)
    embedding.meta['loss_history'] = history
    return embedding, features, neighborhoods, weights


def aggregation_influence(neighborhoods, K=None):
    """I(u): share of the |V| * K sampling slots in which u appears."""
    K = neighborhoods.num_layers if K is None else K
    node_ids = neighborhoods.node_ids
    counts = {v: 0 for v in node_ids}
    for k in range(K):
        for v in node_ids:
            for u in neighborhoods.layers[k][v][0]:
                counts[u] = counts.get(u, 0) + 1
    denominator = len(node_ids) * K
    return {u: (counts[u] / denominator if denominator else 0.0) for u in sorted(counts)}
