"""
Scorers map candidate pairs to link likelihoods; higher means more likely.
"""

import logging

import numpy as np
import pandas as pd

from common.errors import ConfigError, MissingInputError, SchemaMismatchError

# Set up logging
logger = logging.getLogger(__name__)


def _as_pairs(pairs):
    return np.asarray(pairs, dtype=np.int64).reshape(-1, 2)


def score_pa_sum(s, pairs):
    """k_u + k_v at t0."""
    p = _as_pairs(pairs)
    return (s.degree[p[:, 0]] + s.degree[p[:, 1]]).astype(np.float64)


def score_pa_product(s, pairs):
    """k_u * k_v at t0."""
    p = _as_pairs(pairs)
    return (s.degree[p[:, 0]].astype(np.float64) * s.degree[p[:, 1]])


def score_common_neighbors(s, pairs):
    """|Γ(u) ∩ Γ(v)| at t0, row-wise on the sparse adjacency."""
    p = _as_pairs(pairs)
    if p.shape[0] == 0:
        return np.zeros(0)
    a = s.to_csr()
    shared = a[p[:, 0]].multiply(a[p[:, 1]]).sum(axis=1)
    return np.asarray(shared, dtype=np.float64).ravel()


def score_random(pairs, seed):
    """Uniform scores in [0, 1), reproducible for a given seed and pair count."""
    p = _as_pairs(pairs)
    return np.random.default_rng([int(seed), 2]).random(p.shape[0])


class Scorer:
    """
    Base scorer. ``needs_features`` scorers score feature rows built by
    predict_task; the others score pairs on the t0 snapshot unless
    ``needs_snapshot`` is False.
    """

    name = "scorer"
    needs_features = False
    needs_snapshot = True

    def score(self, s, pairs):
        raise NotImplementedError


class PaSumScorer(Scorer):
    name = "pa"

    def score(self, s, pairs):
        return score_pa_sum(s, pairs)


class PaProductScorer(Scorer):
    name = "pa_product"

    def score(self, s, pairs):
        return score_pa_product(s, pairs)


class CommonNeighborsScorer(Scorer):
    name = "cn"

    def score(self, s, pairs):
        return score_common_neighbors(s, pairs)


class RandomScorer(Scorer):
    name = "random"
    needs_snapshot = False

    def __init__(self, seed=0):
        self.seed = seed

    def score(self, s, pairs):
        return score_random(pairs, self.seed)


class MlpScorer(Scorer):
    name = "mlp"
    needs_features = True

    def __init__(self, model, path=None):
        self.model = model
        self.path = path

    def score(self, s, pairs):
        raise ConfigError("the MLP scorer scores feature rows, use predict_task")


STATISTICAL_SCORERS = {
    "pa": PaSumScorer,
    "pa_sum": PaSumScorer,
    "pa_product": PaProductScorer,
    "cn": CommonNeighborsScorer,
}


def parse_scorer(spec, seed=0):
    """``pa``, ``pa_product``, ``cn``, ``random`` or ``mlp:<model file>``."""
    if spec in STATISTICAL_SCORERS:
        return STATISTICAL_SCORERS[spec]()
    if spec == "random":
        return RandomScorer(seed)
    if spec.startswith("mlp:"):
        from model_registry.model_store import load_model

        path = spec[len("mlp:"):]
        if not path:
            raise ConfigError("mlp scorer needs a model file: mlp:<path>")
        return MlpScorer(load_model(path), path=path)
    raise ConfigError(f"unknown scorer '{spec}'; choose pa, pa_product, cn, random or mlp:<model>")


def write_scores_csv(pairs, scores, path):
    p = _as_pairs(pairs)
    frame = pd.DataFrame({"u": p[:, 0], "v": p[:, 1], "score": np.asarray(scores, dtype=np.float64)})
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} scores to {path}")


def read_scores_csv(path):
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except FileNotFoundError as e:
        raise MissingInputError(f"score file not found: {path}", path=path) from e
    if list(frame.columns) != ["u", "v", "score"]:
        raise SchemaMismatchError(f"score file {path} must have columns u,v,score, got {list(frame.columns)}")
    return frame[["u", "v"]].to_numpy(dtype=np.int64).reshape(-1, 2), frame["score"].to_numpy(dtype=np.float64)
