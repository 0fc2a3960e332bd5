"""
Column transforms: Yeo-Johnson power transform and PCA via cyclic Jacobi
eigendecomposition of the sample covariance.
"""

import logging
from dataclasses import dataclass

import numpy as np

from common.errors import ConfigError, InsufficientDataError

# Set up logging
logger = logging.getLogger(__name__)

LAMBDA_GRID = np.round(np.arange(-20, 21) / 10.0, 1)
JACOBI_MAX_SWEEPS = 100
JACOBI_TOLERANCE = 1e-15


def yeo_johnson(values, lam):
    x = np.asarray(values, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    neg = ~pos
    if abs(lam) < 1e-12:
        out[pos] = np.log1p(x[pos])
    else:
        out[pos] = (np.power(x[pos] + 1.0, lam) - 1.0) / lam
    if abs(lam - 2.0) < 1e-12:
        out[neg] = -np.log1p(-x[neg])
    else:
        out[neg] = -(np.power(-x[neg] + 1.0, 2.0 - lam) - 1.0) / (2.0 - lam)
    return out


def yeo_johnson_log_likelihood(values, lam):
    x = np.asarray(values, dtype=np.float64)
    transformed = yeo_johnson(x, lam)
    variance = transformed.var()
    if variance <= 0 or not np.isfinite(variance):
        return -np.inf
    n = x.shape[0]
    return -0.5 * n * np.log(variance) + (lam - 1.0) * np.sum(np.sign(x) * np.log1p(np.abs(x)))


def fit_lambda(values):
    """Grid search over λ ∈ {-2.0, -1.9, ..., 2.0} maximizing the Gaussian log-likelihood."""
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        raise InsufficientDataError("cannot fit a Yeo-Johnson lambda to an empty column")
    if np.all(x == x[0]):
        return 1.0
    scores = [yeo_johnson_log_likelihood(x, lam) for lam in LAMBDA_GRID]
    return float(LAMBDA_GRID[int(np.argmax(scores))])


def fit_lambdas(matrix):
    return [fit_lambda(column) for column in np.asarray(matrix, dtype=np.float64).T]


def apply_yeo_johnson(matrix, lambdas):
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.shape[1] != len(lambdas):
        raise ConfigError(f"{len(lambdas)} Yeo-Johnson lambdas for {matrix.shape[1]} columns")
    return np.column_stack([yeo_johnson(matrix[:, j], lam) for j, lam in enumerate(lambdas)]) \
        if matrix.shape[1] else matrix.copy()


def jacobi_eigh(symmetric):
    """Eigenvalues and eigenvectors (columns) of a symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(symmetric, dtype=np.float64)
    d = a.shape[0]
    v = np.eye(d)
    scale = max(np.abs(a).max(), 1e-300)
    for sweep in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= JACOBI_TOLERANCE * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) <= JACOBI_TOLERANCE * scale * 1e-3:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = a[p, p], a[q, q]
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        logger.warning(f"Jacobi eigensolver stopped after {JACOBI_MAX_SWEEPS} sweeps")
    return np.diag(a).copy(), v


@dataclass(frozen=True, eq=False)
class PcaProjection:
    mean: np.ndarray
    axes: np.ndarray
    eigenvalues: np.ndarray

    @property
    def components(self):
        return self.axes.shape[0]

    @property
    def input_dim(self):
        return self.axes.shape[1]


def pca_fit(matrix, k):
    """
    Mean vector plus the k leading orthonormal eigenvectors of the sample
    covariance. Each axis is signed so its largest-magnitude coordinate is
    positive.
    """
    x = np.asarray(matrix, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2:
        raise InsufficientDataError("PCA needs a matrix with at least two rows")
    rows, dim = x.shape
    if k < 1 or k > dim:
        raise ConfigError(f"PCA components must be in [1, {dim}], got {k}")
    mean = x.mean(axis=0)
    centered = x - mean
    if not np.any(centered):
        raise InsufficientDataError("PCA input rows are all identical")

    covariance = centered.T @ centered / (rows - 1)
    eigenvalues, vectors = jacobi_eigh(covariance)
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vectors = vectors[:, order]
    for j in range(dim):
        pivot = int(np.argmax(np.abs(vectors[:, j])))
        if vectors[pivot, j] < 0:
            vectors[:, j] = -vectors[:, j]

    logger.info(f"Fitted PCA: {dim} -> {k} components, retained variance "
                f"{eigenvalues[:k].sum() / max(eigenvalues.sum(), 1e-300):.3f}")
    return PcaProjection(mean=mean, axes=vectors[:, :k].T.copy(), eigenvalues=eigenvalues)


def pca_transform(projection, rows):
    x = np.asarray(rows, dtype=np.float64)
    return (x - projection.mean) @ projection.axes.T
