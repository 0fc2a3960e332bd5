"""
Tests for scorers and the prediction service.
"""

import os
import sys

import numpy as np
import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from common.errors import ConfigError, SchemaMismatchError
from data_pipeline.synthetic import SyntheticConfig, generate_synthetic
from feature_store.definitions import FeatureConfig
from feature_store.extractors import build_feature_matrix
from feature_store.matrix_io import feature_header
from model_registry.model_store import save_model
from model_training.train_model import MlpTrainer, TrainConfig
from scoring.prediction_service import LinkPredictionService, predict_task
from scoring.scorers import (
    CommonNeighborsScorer,
    MlpScorer,
    PaSumScorer,
    RandomScorer,
    Scorer,
    parse_scorer,
    read_scores_csv,
    score_common_neighbors,
    score_pa_product,
    score_pa_sum,
    score_random,
    write_scores_csv,
)
from task_builder.task import TaskInstance, TaskSpec, balanced_training_set, sample_pairs
from temporal_graph.graph import build_graph
from temporal_graph.snapshot import snapshot


def _task(pairs, t0=0, t1=1):
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    return TaskInstance(spec=TaskSpec(t0_day=t0, t1_day=t1), pairs=pairs, labels=np.zeros(len(pairs), dtype=np.int8))


def test_statistical_scores_on_g1(g1):
    s = snapshot(g1, 0)
    assert score_pa_sum(s, [(0, 3)]).tolist() == [4.0]
    assert score_pa_product(s, [(0, 3)]).tolist() == [4.0]
    assert score_common_neighbors(s, [(0, 3), (0, 4)]).tolist() == [1.0, 0.0]


def test_pa_sum_of_isolated_pair_is_zero():
    s = snapshot(build_graph([(0, 1, 0)], 4), 0)
    assert score_pa_sum(s, [(2, 3)]).tolist() == [0.0]


def test_scores_match_adjacency_lists():
    rng = np.random.default_rng(0)
    for seed in range(20):
        n = int(rng.integers(5, 200))
        records = [(int(a), int(b), 0) for a, b in rng.integers(n, size=(3 * n, 2))]
        s = snapshot(build_graph(records, n), 0)
        pairs = [(int(u), int(v)) for u, v in rng.integers(n, size=(50, 2))]
        adjacency = [set(s.neighbors(i)) for i in range(n)]
        assert score_pa_sum(s, pairs).tolist() == [len(adjacency[u]) + len(adjacency[v]) for u, v in pairs]
        assert score_common_neighbors(s, pairs).tolist() == [len(adjacency[u] & adjacency[v]) for u, v in pairs]


def test_random_scores_are_seeded():
    pairs = np.zeros((10, 2), dtype=np.int64)
    assert np.array_equal(score_random(pairs, 3), score_random(pairs, 3))
    assert not np.array_equal(score_random(pairs, 3), score_random(pairs, 4))


def test_parse_scorer():
    assert isinstance(parse_scorer("pa"), PaSumScorer)
    assert isinstance(parse_scorer("cn"), CommonNeighborsScorer)
    assert isinstance(parse_scorer("random", seed=2), RandomScorer)
    with pytest.raises(ConfigError):
        parse_scorer("adamic")
    with pytest.raises(ConfigError):
        parse_scorer("mlp:")


def test_predict_task_statistical(g1):
    task = _task([(0, 3), (0, 4), (1, 4)])
    assert predict_task(PaSumScorer(), g1, task).tolist() == [4.0, 3.0, 3.0]


class _PairIndexScorer(Scorer):
    """Scores pairs without looking at the graph."""

    name = "pair_index"
    needs_snapshot = False

    def score(self, s, pairs):
        assert s is None
        return np.arange(len(pairs), dtype=np.float64)


def test_predict_task_dispatches_on_scorer_needs(g1):
    task = _task([(0, 3), (0, 4), (1, 4)])
    assert predict_task(_PairIndexScorer(), g1, task).tolist() == [0.0, 1.0, 2.0]
    assert not RandomScorer.needs_snapshot
    assert MlpScorer.needs_features
    assert predict_task(RandomScorer(7), g1, task).tolist() == score_random(task.pairs, 7).tolist()


def test_all_isolated_task_scores_zero_under_cn():
    g = build_graph([(0, 1, 0)], 6)
    scores = predict_task(CommonNeighborsScorer(), g, _task([(2, 3), (4, 5), (2, 5)]))
    assert scores.tolist() == [0.0, 0.0, 0.0]


def _trained_scorer(g, t0, feature_set="baseline15", yeo_johnson=False):
    spec = TaskSpec(t0_day=t0 // 2, t1_day=t0)
    train_task = balanced_training_set(g, spec, 100, seed=0)
    config = FeatureConfig(feature_set=feature_set, yeo_johnson=yeo_johnson)
    fm = build_feature_matrix(g, train_task.pairs, spec.t0_day, config)
    trainer = MlpTrainer(TrainConfig(hidden_layers=[8, 4], epochs=5, seed=0))
    trainer.fit(fm.values, train_task.labels, feature_header=feature_header(fm))
    return trainer.model


@pytest.fixture(scope="module")
def synthetic_graph():
    return generate_synthetic(SyntheticConfig(num_nodes=300, edges_per_new_node=2, seed=1))


def test_mlp_scores_are_probabilities(synthetic_graph):
    g = synthetic_graph
    model = _trained_scorer(g, 200)
    task = sample_pairs(g, TaskSpec(t0_day=200, t1_day=g.last_day(), num_samples=300, seed=1))
    scores = predict_task(MlpScorer(model), g, task)
    assert scores.shape == (300,)
    assert np.all((scores > 0) & (scores < 1))


def test_mlp_scores_follow_pair_order(synthetic_graph):
    g = synthetic_graph
    model = _trained_scorer(g, 200, yeo_johnson=True)
    task = sample_pairs(g, TaskSpec(t0_day=200, t1_day=g.last_day(), num_samples=200, seed=2))
    order = np.random.default_rng(0).permutation(len(task))
    shuffled = TaskInstance(spec=task.spec, pairs=task.pairs[order], labels=task.labels[order])
    scorer = MlpScorer(model)
    assert np.allclose(predict_task(scorer, g, shuffled), predict_task(scorer, g, task)[order], rtol=0, atol=1e-12)


def test_cold_start_scores_are_finite(synthetic_graph):
    """Pairs of nodes without edges at t0 still get finite scores from every scorer."""
    g = synthetic_graph
    t0 = 150
    task = sample_pairs(g, TaskSpec(t0_day=t0, t1_day=g.last_day(), degree_cutoff=0, num_samples=200, seed=3))
    assert np.all(snapshot(g, t0).degree[task.pairs.ravel()] == 0)
    model = _trained_scorer(g, 280, feature_set="extended", yeo_johnson=True)
    for scorer in (PaSumScorer(), CommonNeighborsScorer(), RandomScorer(1), MlpScorer(model)):
        assert np.isfinite(predict_task(scorer, g, task)).all()


def test_mlp_scorer_rejects_mismatched_columns(synthetic_graph):
    g = synthetic_graph
    model = _trained_scorer(g, 200)
    model.feature_header = dict(model.feature_header, columns=["x"] * 15)
    with pytest.raises(SchemaMismatchError):
        predict_task(MlpScorer(model), g, _task([(0, 5)], t0=200, t1=250))


def test_prediction_service(tmp_path, synthetic_graph):
    g = synthetic_graph
    service = LinkPredictionService()
    assert "error" in service.get_model_info()
    path = tmp_path / "model.txt"
    save_model(_trained_scorer(g, 200), str(path))
    assert service.load_model(str(path))
    info = service.get_model_info()
    assert info["layers"] == [15, 8, 4, 1]
    assert info["feature_set"] == "baseline15"
    scores = service.predict_task(g, _task([(0, 5), (1, 7)], t0=200, t1=250))
    assert scores.shape == (2,)


def test_scores_csv_round_trip(tmp_path):
    pairs = np.array([[0, 3], [1, 4]])
    path = tmp_path / "scores.csv"
    write_scores_csv(pairs, [0.25, 1.0 / 3.0], str(path))
    read_pairs, scores = read_scores_csv(str(path))
    assert np.array_equal(read_pairs, pairs)
    assert scores.tolist() == [0.25, 1.0 / 3.0]
    assert path.read_text(encoding="utf-8").splitlines()[0] == "u,v,score"
