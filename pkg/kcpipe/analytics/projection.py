import numpy as np

from ..errors import InputError
from ..models.report import Projection2D


def pca_project(embeddings, out_dims=2):
    """Project rows onto the leading principal components of their covariance.

    Each component is signed so its largest-magnitude loading is positive.
    """
    data = np.asarray(embeddings, dtype=np.float64)
    if data.ndim != 2 or data.shape[0] < 2:
        raise InputError('PCA needs at least two rows', code='too_few_rows')
    if not np.all(np.isfinite(data)):
        raise InputError('PCA input contains non-finite values', code='non_finite')

    coords = np.zeros((data.shape[0], out_dims))
    # Equal rows do not always center to exact zeros, so test them directly
    if np.ptp(data, axis=0).max() == 0:
        return Projection2D(coordinates=coords, explained_variance=[0.0] * out_dims,
                            degenerate=True)

    centered = data - data.mean(axis=0)
    covariance = centered.T @ centered / (data.shape[0] - 1)
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)
    order = np.argsort(eigenvalues, kind='stable')[::-1]
    eigenvalues = np.clip(eigenvalues[order], 0.0, None)
    eigenvectors = eigenvectors[:, order]

    total = eigenvalues.sum()
    if total <= 0:
        return Projection2D(coordinates=coords, explained_variance=[0.0] * out_dims,
                            degenerate=True)

    take = min(out_dims, data.shape[1])
    components = eigenvectors[:, :take]
    for k in range(take):
        pivot = np.argmax(np.abs(components[:, k]))
        if components[pivot, k] < 0:
            components[:, k] = -components[:, k]
    coords[:, :take] = centered @ components
    ratios = [float(eigenvalues[k] / total) for k in range(take)] + [0.0] * (out_dims - take)
    return Projection2D(coordinates=coords, explained_variance=ratios)


def joint_projection(emb_raw, emb_kc, out_dims=2):
    """Fit one PCA on both point clouds; returns (raw coords, kc coords, fit)."""
    stacked = np.vstack([emb_raw.vectors, emb_kc.vectors])
    fit = pca_project(stacked, out_dims)
    n = emb_raw.vectors.shape[0]
    return fit.coordinates[:n], fit.coordinates[n:], fit
