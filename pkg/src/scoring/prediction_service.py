"""
Prediction service: scores every pair of a task with a statistical scorer or
a trained MLP, recomputing the model's features from the graph.
"""

import logging

import numpy as np

from common.errors import LinkBenchError, SchemaMismatchError
from common.parallel import map_chunks
from feature_store.definitions import FeatureConfig
from feature_store.extractors import build_feature_matrix
from model_registry.model_store import describe, load_model
from model_training.mlp import mlp_predict
from scoring.scorers import MlpScorer
from temporal_graph.snapshot import snapshot

# Set up logging
logger = logging.getLogger(__name__)


def _score_chunk(pairs, scorer, s):
    return scorer.score(s, pairs).tolist()


def feature_config_for(model, fallback=None):
    """FeatureConfig stored with the model (including fitted Yeo-Johnson lambdas)."""
    header = model.feature_header or {}
    if "config" in header:
        return FeatureConfig(**header["config"])
    if fallback is None:
        raise SchemaMismatchError("model carries no feature configuration; pass one explicitly")
    return fallback


def predict_task(scorer, g, task, feature_config=None, threads=1):
    """One finite score per task pair, aligned with task.pairs."""
    t0_day = task.spec.t0_day
    pairs = task.pairs
    logger.info(f"Scoring {len(pairs)} pairs with '{scorer.name}' at t0={t0_day}")

    if scorer.needs_features:
        config = feature_config_for(scorer.model, feature_config)
        fm = build_feature_matrix(g, pairs, t0_day, config, threads=threads)
        expected = (scorer.model.feature_header or {}).get("columns")
        if expected is not None and list(expected) != list(fm.columns):
            raise SchemaMismatchError("feature columns differ from the ones the model was trained on")
        scores = mlp_predict(scorer.model, fm.values)
    elif not scorer.needs_snapshot:
        scores = scorer.score(None, pairs)
    else:
        s0 = snapshot(g, t0_day)
        pair_list = pairs.tolist()
        scores = np.asarray(map_chunks(_score_chunk, pair_list, threads, scorer, s0), dtype=np.float64)

    scores = np.asarray(scores, dtype=np.float64).reshape(len(pairs))
    if not np.isfinite(scores).all():
        raise LinkBenchError(f"scorer '{scorer.name}' produced non-finite scores")
    return scores


class LinkPredictionService:
    def __init__(self, threads=1):
        self.model = None
        self.scorer = None
        self.threads = threads

    def load_model(self, path):
        """Load a trained MLP model file."""
        logger.info(f"Loading model from {path}")
        self.model = load_model(path)
        self.scorer = MlpScorer(self.model, path=path)
        logger.info("Model loaded successfully")
        return True

    def predict_task(self, g, task):
        if self.scorer is None:
            raise LinkBenchError("Model not loaded")
        return predict_task(self.scorer, g, task, threads=self.threads)

    def get_model_info(self):
        """Get information about the loaded model."""
        if self.model is None:
            return {"error": "Model not loaded"}
        return describe(self.model)
