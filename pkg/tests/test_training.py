"""
Tests for MLP training.
"""

import os
import sys

import numpy as np
import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from common.errors import ConfigError, TrainingDivergedError
from common.settings import build_config
from model_training.mlp import init_mlp, mlp_predict
from model_training.train_model import MlpTrainer, TrainConfig, train


def _separable(seed=0, n=200):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, 2))
    y = (x[:, 0] + 0.5 * x[:, 1] > 0).astype(float)
    x[y == 1] += 0.3
    x[y == 0] -= 0.3
    return x, y


def test_separable_toy_set_is_learned():
    x, y = _separable()
    cfg = TrainConfig(hidden_layers=[8], learning_rate=0.01, epochs=200, batch_size=16, seed=1)
    result = MlpTrainer(cfg).fit(x, y)
    predictions = mlp_predict(result.model, x) >= 0.5
    assert np.mean(predictions == (y == 1)) == 1.0
    assert len(result.loss_history) == 200


def test_loss_mostly_decreases_on_separable_set():
    x, y = _separable(1)
    cfg = TrainConfig(hidden_layers=[8], learning_rate=0.01, epochs=60, batch_size=16, seed=2)
    result = MlpTrainer(cfg).fit(x, y)
    assert result.loss_history[-1] < result.loss_history[0]
    assert len(result.increased_epochs) <= len(result.loss_history) // 4


def test_training_is_deterministic():
    x, y = _separable(2)
    cfg = TrainConfig(hidden_layers=[6, 4], epochs=15, batch_size=8, seed=3)
    first = MlpTrainer(cfg).fit(x, y).model
    second = MlpTrainer(cfg).fit(x, y).model
    for a, b in zip(first.weights + first.biases, second.weights + second.biases):
        assert np.array_equal(a, b)


def test_constant_labels_converge_to_constant():
    x = np.random.default_rng(3).normal(size=(100, 3))
    y = np.ones(100)
    cfg = TrainConfig(hidden_layers=[4], learning_rate=0.05, epochs=100, batch_size=20, seed=0)
    model = MlpTrainer(cfg).fit(x, y).model
    assert mlp_predict(model, x).min() > 0.95


def test_sgd_optimizer_trains():
    x, y = _separable(4)
    cfg = TrainConfig(hidden_layers=[8], optimizer="sgd", learning_rate=0.1, epochs=50, batch_size=16, seed=0)
    result = MlpTrainer(cfg).fit(x, y)
    assert result.loss_history[-1] < result.loss_history[0]


def test_pca_and_validation_holdout():
    rng = np.random.default_rng(5)
    x = np.hstack([_separable(5)[0], rng.normal(size=(200, 4))])
    y = _separable(5)[1]
    cfg = TrainConfig(hidden_layers=[8], pca_components=3, validation_fraction=0.25, epochs=20, seed=0)
    trainer = MlpTrainer(cfg)
    result = trainer.fit(x, y)
    assert trainer.model.pca.components == 3
    assert trainer.model.layer_sizes[0] == 3
    assert trainer.model.input_dim == 6
    assert len(result.validation_auc) == 20
    assert 0.0 <= result.validation_auc[-1] <= 1.0
    metrics = trainer.evaluate(x, y)
    assert set(metrics) == {"loss", "accuracy", "auc"}


def test_divergence_is_reported():
    x, y = _separable(6)
    x = x * 1e200
    model = init_mlp([2, 4, 1], 0)
    cfg = TrainConfig(hidden_layers=[4], optimizer="sgd", learning_rate=1e150, epochs=3, batch_size=8)
    with pytest.raises(TrainingDivergedError) as info:
        train(model, x, y, cfg)
    assert info.value.exit_code == 7


def test_train_config_validation():
    with pytest.raises(ConfigError):
        build_config(TrainConfig, learning_rate=0.0)
    with pytest.raises(ConfigError):
        build_config(TrainConfig, batch_size=0)
