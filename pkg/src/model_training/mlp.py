"""
Dense feed-forward network with ReLU hidden layers and a logistic output,
trained on mean binary cross-entropy.

Inputs are z-score normalized (and optionally PCA-projected) inside the
model, so a saved model is self-contained.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import expit
from sklearn.preprocessing import StandardScaler

from common.errors import ConfigError, SchemaMismatchError
from feature_store.transforms import PcaProjection, pca_transform

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(eq=False)
class MlpModel:
    layer_sizes: list
    weights: list
    biases: list
    norm_mean: np.ndarray
    norm_std: np.ndarray
    pca: Optional[PcaProjection] = None
    feature_header: Optional[dict] = None
    meta: dict = field(default_factory=dict)

    @property
    def input_dim(self):
        return int(self.norm_mean.shape[0])

    @property
    def num_parameters(self):
        return int(sum(w.size + b.size for w, b in zip(self.weights, self.biases)))


def check_architecture(layer_sizes):
    if len(layer_sizes) < 2 or any(int(s) < 1 for s in layer_sizes):
        raise ConfigError(f"invalid layer sizes {layer_sizes}")
    if layer_sizes[-1] != 1:
        raise ConfigError(f"output layer must have one unit, got {layer_sizes[-1]}")


def init_mlp(layer_sizes, seed, input_dim=None):
    """Per-layer weights uniform in ±sqrt(6 / (fan_in + fan_out)); zero biases."""
    layer_sizes = [int(s) for s in layer_sizes]
    check_architecture(layer_sizes)
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    input_dim = layer_sizes[0] if input_dim is None else int(input_dim)
    return MlpModel(
        layer_sizes=layer_sizes,
        weights=weights,
        biases=biases,
        norm_mean=np.zeros(input_dim),
        norm_std=np.ones(input_dim),
    )


def fit_normalization(x):
    """Per-column mean/std from a StandardScaler; constant columns pass through (mean 0, std 1)."""
    x = np.asarray(x, dtype=np.float64)
    scaler = StandardScaler().fit(x)
    mean = scaler.mean_.copy()
    std = np.sqrt(scaler.var_)
    constant = np.ptp(x, axis=0) == 0
    mean[constant] = 0.0
    std[constant] = 1.0
    return mean, std


def preprocess(model, x):
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if x.shape[1] != model.input_dim:
        raise SchemaMismatchError(f"model expects {model.input_dim} input columns, got {x.shape[1]}")
    z = (x - model.norm_mean) / model.norm_std
    if model.pca is not None:
        z = pca_transform(model.pca, z)
    return z


def _forward(model, z):
    """Pre-activations and activations of every layer for preprocessed inputs."""
    activations = [z]
    pre = []
    a = z
    last = len(model.weights) - 1
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        h = a @ w + b
        pre.append(h)
        a = h if i == last else np.maximum(h, 0.0)
        activations.append(a)
    return pre, activations


def mlp_logits(model, x):
    pre, _ = _forward(model, preprocess(model, x))
    return pre[-1][:, 0]


def mlp_predict(model, x):
    return expit(mlp_logits(model, x))


def mlp_forward(model, row):
    """Probability in (0, 1) for a single feature row."""
    row = np.asarray(row, dtype=np.float64).reshape(1, -1)
    return float(mlp_predict(model, row)[0])


def bce_from_logits(logits, labels):
    y = np.asarray(labels, dtype=np.float64)
    return float(np.mean(np.logaddexp(0.0, logits) - y * logits))


def mlp_loss(model, x, labels):
    return bce_from_logits(mlp_logits(model, x), labels)


def mlp_gradients(model, x, labels):
    """
    Exact gradients of mean binary cross-entropy with respect to every
    weight matrix and bias vector. Returns (weight_grads, bias_grads, loss).
    """
    y = np.asarray(labels, dtype=np.float64).ravel()
    z = preprocess(model, x)
    if z.shape[0] != y.shape[0]:
        raise SchemaMismatchError(f"{z.shape[0]} rows but {y.shape[0]} labels")
    if not np.isin(y, (0.0, 1.0)).all():
        raise SchemaMismatchError("labels must be 0 or 1")

    pre, activations = _forward(model, z)
    logits = pre[-1][:, 0]
    loss = bce_from_logits(logits, y)

    delta = ((expit(logits) - y) / y.shape[0])[:, None]
    weight_grads = [None] * len(model.weights)
    bias_grads = [None] * len(model.biases)
    for i in range(len(model.weights) - 1, -1, -1):
        weight_grads[i] = activations[i].T @ delta
        bias_grads[i] = delta.sum(axis=0)
        if i > 0:
            delta = (delta @ model.weights[i].T) * (pre[i - 1] > 0)
    return weight_grads, bias_grads, loss
