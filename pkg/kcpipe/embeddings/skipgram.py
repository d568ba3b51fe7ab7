"""Skip-gram with negative sampling over a walk corpus."""

import logging

import numpy as np
from scipy.special import expit, log_expit

from ..models.embedding import EmbeddingMatrix
from ..utils.seeds import make_rng

logger = logging.getLogger(__name__)

NOISE_EXPONENT = 0.75
MIN_LR_FRACTION = 1e-4


def pair_loss(center, context, negatives):
    """Loss and gradients for one (center, context) pair and its negatives.

    loss = -log s(z_c . z_o) - sum_n log s(-z_c . z_n)
    Returns (loss, d/d center, d/d context, d/d negatives).
    """
    negatives = np.atleast_2d(negatives)
    positive = center @ context
    negative = negatives @ center
    loss = -log_expit(positive) - np.sum(log_expit(-negative))
    g_pos = expit(positive) - 1.0
    g_neg = expit(negative)
    grad_center = g_pos * context + g_neg @ negatives
    grad_context = g_pos * center
    grad_negatives = g_neg[:, None] * center[None, :]
    return float(loss), grad_center, grad_context, grad_negatives


def scatter_mean(w, rows, grads, lr):
    """w[r] -= lr * mean of the gradients addressed to row r.

    Rows hit several times in one batch take one averaged step, so the update
    size does not grow with how often a row recurs in the batch.
    """
    order = np.argsort(rows, kind='stable')
    sorted_rows = rows[order]
    touched, starts, counts = np.unique(sorted_rows, return_index=True, return_counts=True)
    sums = np.add.reduceat(grads[order], starts, axis=0)
    w[touched] -= lr * sums / counts[:, None]


def batch_step(w_in, w_out, centers, contexts, negatives, lr):
    """One SGD step on a batch of pairs; returns the summed pre-update loss."""
    zc = w_in[centers]
    zo = w_out[contexts]
    zn = w_out[negatives]
    positive = np.einsum('bd,bd->b', zc, zo)
    negative = np.einsum('bkd,bd->bk', zn, zc)
    loss = -log_expit(positive).sum() - log_expit(-negative).sum()

    g_pos = expit(positive) - 1.0
    g_neg = expit(negative)
    grad_center = g_pos[:, None] * zo + np.einsum('bk,bkd->bd', g_neg, zn)
    grad_context = g_pos[:, None] * zc
    grad_negatives = g_neg[:, :, None] * zc[:, None, :]

    scatter_mean(w_in, centers, grad_center, lr)
    out_rows = np.concatenate([contexts, negatives.ravel()])
    out_grads = np.vstack([grad_context, grad_negatives.reshape(-1, zc.shape[1])])
    scatter_mean(w_out, out_rows, out_grads, lr)
    return float(loss)


def build_pairs(walks, window, rng):
    """(center, context) index pairs from a padded walk array.

    Each position draws an effective window in [1, window], as word2vec does.
    """
    if walks.shape[1] < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    reach = rng.integers(1, window + 1, size=walks.shape)
    centers, contexts = [], []
    for offset in range(1, min(window, walks.shape[1] - 1) + 1):
        left, right = walks[:, :-offset], walks[:, offset:]
        valid = (left >= 0) & (right >= 0)
        forward = valid & (reach[:, :-offset] >= offset)
        backward = valid & (reach[:, offset:] >= offset)
        centers.extend([left[forward], right[backward]])
        contexts.extend([right[forward], left[backward]])
    return np.concatenate(centers), np.concatenate(contexts)


def noise_distribution(walks, vocabulary_size):
    counts = np.bincount(walks[walks >= 0], minlength=vocabulary_size).astype(np.float64)
    weights = counts ** NOISE_EXPONENT
    total = weights.sum()
    return weights / total if total > 0 else weights


def index_walks(corpus, node_ids):
    """Padded walk array re-indexed to rows of node_ids (-1 elsewhere)."""
    padded = corpus.as_padded_array()
    top = max([int(padded.max(initial=-1))] + list(node_ids)) + 1
    index = np.full(top + 1, -1, dtype=np.int64)
    index[np.asarray(node_ids, dtype=np.int64)] = np.arange(len(node_ids))
    return np.where(padded >= 0, index[padded], -1)


def train_skipgram(corpus, config, node_ids=None):
    """Train input vectors for every node in node_ids (default: corpus nodes)."""
    if node_ids is None:
        node_ids = sorted({v for walk in corpus.walks for v in walk})
    node_ids = list(node_ids)
    n, d = len(node_ids), config.dimensions
    rng = make_rng(config.seed, 'skipgram')

    w_in = (rng.random((n, d)) - 0.5) / d
    w_out = np.zeros((n, d))

    walks = index_walks(corpus, node_ids)
    noise = noise_distribution(walks, n)

    # At most one pair per vocabulary row per step on average
    batch = min(config.batch_size, n)

    history = []
    if noise.sum() > 0:
        for epoch in range(config.epochs):
            centers, contexts = build_pairs(walks, config.window, rng)
            if not len(centers):
                break
            order = rng.permutation(len(centers))
            centers, contexts = centers[order], contexts[order]
            epoch_loss = 0.0
            for start in range(0, len(centers), batch):
                stop = min(start + batch, len(centers))
                progress = (epoch + start / len(centers)) / config.epochs
                lr = config.learning_rate * max(MIN_LR_FRACTION, 1.0 - progress)
                negatives = rng.choice(n, size=(stop - start, config.negative_samples), p=noise)
                epoch_loss += batch_step(w_in, w_out, centers[start:stop],
                                         contexts[start:stop], negatives, lr)
            history.append(epoch_loss / len(centers))
            logger.info('skip-gram epoch %d/%d: mean pair loss %.5f',
                        epoch + 1, config.epochs, history[-1])

    return EmbeddingMatrix(node_ids=node_ids, vectors=w_in, generator='node2vec',
                           seed=config.seed, meta={'loss_history': history})
