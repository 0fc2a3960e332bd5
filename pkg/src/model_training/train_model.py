"""
Train link prediction MLPs on feature matrices, with optional PCA reduction,
validation holdout and MLflow tracking.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field
from sklearn.model_selection import train_test_split

from common.errors import ConfigError, SchemaMismatchError, TrainingDivergedError
from evaluation.roc import auc
from feature_store.transforms import pca_fit
from model_training.mlp import (
    fit_normalization,
    init_mlp,
    mlp_gradients,
    mlp_loss,
    mlp_predict,
)

# Set up logging
logger = logging.getLogger(__name__)

LOSS_INCREASE_TOLERANCE = 1e-12


class TrainConfig(BaseModel):
    hidden_layers: List[int] = Field(default_factory=lambda: [100, 10])
    optimizer: Literal["adam", "sgd"] = "adam"
    learning_rate: float = Field(default=1e-3, gt=0.0)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    epsilon: float = Field(default=1e-8, gt=0.0)
    epochs: int = Field(default=50, ge=1)
    batch_size: int = Field(default=64, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    pca_components: Optional[int] = Field(default=None, ge=1)
    validation_fraction: float = Field(default=0.0, ge=0.0, lt=0.5)


@dataclass
class TrainingResult:
    model: object
    loss_history: list
    increased_epochs: list = field(default_factory=list)
    validation_auc: list = field(default_factory=list)


class AdamState:
    def __init__(self, params, cfg):
        self.cfg = cfg
        self.step = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]

    def update(self, params, grads):
        cfg = self.cfg
        self.step += 1
        correction1 = 1.0 - cfg.beta1 ** self.step
        correction2 = 1.0 - cfg.beta2 ** self.step
        for i, (p, g) in enumerate(zip(params, grads)):
            self.m[i] = cfg.beta1 * self.m[i] + (1.0 - cfg.beta1) * g
            self.v[i] = cfg.beta2 * self.v[i] + (1.0 - cfg.beta2) * g * g
            m_hat = self.m[i] / correction1
            v_hat = self.v[i] / correction2
            p -= cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.epsilon)


class SgdState:
    def __init__(self, params, cfg):
        self.cfg = cfg

    def update(self, params, grads):
        for p, g in zip(params, grads):
            p -= self.cfg.learning_rate * g


def _validate_inputs(x, labels):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64).ravel()
    if x.ndim != 2 or x.shape[0] != y.shape[0]:
        raise SchemaMismatchError(f"feature matrix {x.shape} does not match {y.shape[0]} labels")
    if x.shape[0] == 0:
        raise ConfigError("cannot train on an empty feature matrix")
    if not np.isfinite(x).all():
        raise SchemaMismatchError("feature matrix contains non-finite values")
    return x, y


def train(model, x, labels, cfg, validation=None):
    """
    Minibatch training in place of ``model`` (deterministic given cfg.seed).
    Records the full-data loss after every epoch.
    """
    x, y = _validate_inputs(x, labels)
    params = []
    for w, b in zip(model.weights, model.biases):
        params += [w, b]
    state = AdamState(params, cfg) if cfg.optimizer == "adam" else SgdState(params, cfg)
    rng = np.random.default_rng([cfg.seed, 1])

    result = TrainingResult(model=model, loss_history=[])
    n = x.shape[0]
    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(n)
        for start in range(0, n, cfg.batch_size):
            batch = order[start:start + cfg.batch_size]
            weight_grads, bias_grads, _ = mlp_gradients(model, x[batch], y[batch])
            grads = []
            for gw, gb in zip(weight_grads, bias_grads):
                grads += [gw, gb]
            state.update(params, grads)

        loss = mlp_loss(model, x, y)
        if not np.isfinite(loss):
            raise TrainingDivergedError(
                f"loss became {loss} at epoch {epoch}; try a smaller learning rate "
                f"(lr={cfg.learning_rate}, optimizer={cfg.optimizer})",
                epoch=epoch,
            )
        if result.loss_history and loss > result.loss_history[-1] + LOSS_INCREASE_TOLERANCE:
            result.increased_epochs.append(epoch)
            logger.warning(f"Epoch {epoch}: loss increased from {result.loss_history[-1]:.6f} to {loss:.6f}")
        result.loss_history.append(loss)

        message = f"Epoch {epoch}/{cfg.epochs}: loss={loss:.6f}"
        if validation is not None:
            val_x, val_y = validation
            val_auc = auc(mlp_predict(model, val_x), val_y).auc
            result.validation_auc.append(val_auc)
            message += f" val_auc={val_auc:.4f}"
        logger.debug(message)

    logger.info(f"Training finished after {cfg.epochs} epochs, final loss {result.loss_history[-1]:.6f}")
    return result


class MlpTrainer:
    """Builds the model around a feature matrix (normalization, PCA) and trains it."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.model = None
        self.result = None

    def build_model(self, x):
        mean, std = fit_normalization(x)
        projection = None
        width = x.shape[1]
        if self.cfg.pca_components is not None:
            projection = pca_fit((x - mean) / std, self.cfg.pca_components)
            width = projection.components
        layer_sizes = [width] + list(self.cfg.hidden_layers) + [1]
        model = init_mlp(layer_sizes, self.cfg.seed, input_dim=x.shape[1])
        model.norm_mean = mean
        model.norm_std = std
        model.pca = projection
        logger.info(f"Built MLP {layer_sizes} with {model.num_parameters} parameters")
        return model

    def split(self, x, y):
        if not self.cfg.validation_fraction:
            return x, y, None
        stratify = y if len(np.unique(y)) > 1 else None
        x_train, x_val, y_train, y_val = train_test_split(
            x, y, test_size=self.cfg.validation_fraction, random_state=self.cfg.seed % 2**32, stratify=stratify
        )
        if len(np.unique(y_val)) < 2:
            logger.warning("Validation split has a single class; validation AUC disabled")
            return x_train, y_train, None
        return x_train, y_train, (x_val, y_val)

    def fit(self, x, labels, feature_header=None):
        x, y = _validate_inputs(x, labels)
        x_train, y_train, validation = self.split(x, y)
        logger.info(f"Training on {x_train.shape[0]} rows ({int(y_train.sum())} positive)")
        self.model = self.build_model(x_train)
        self.model.feature_header = feature_header
        self.result = train(self.model, x_train, y_train, self.cfg, validation=validation)
        return self.result

    def evaluate(self, x, labels):
        """Loss, accuracy at 0.5 and AUC of the trained model on (x, labels)."""
        x, y = _validate_inputs(x, labels)
        probabilities = mlp_predict(self.model, x)
        metrics = {
            "loss": mlp_loss(self.model, x, y),
            "accuracy": float(np.mean((probabilities >= 0.5) == (y == 1))),
        }
        if len(np.unique(y)) == 2:
            metrics["auc"] = auc(probabilities, y).auc
        logger.info("Evaluation: " + ", ".join(f"{k}={v:.4f}" for k, v in metrics.items()))
        return metrics
