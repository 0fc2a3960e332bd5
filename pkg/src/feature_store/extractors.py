"""
Feature extraction for candidate pairs: node vectors per endpoint, pair
similarity blocks, cold-start imputation and optional Yeo-Johnson.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from common.errors import LinkBenchError
from common.parallel import map_chunks
from feature_store.definitions import (
    FeatureConfig,
    matrix_columns,
    node_columns,
    pair_snapshot_indices,
)
from feature_store.node_metrics import SnapshotMetrics, series_block, two_hop_size
from feature_store.similarity import pair_similarity_features
from feature_store.transforms import apply_yeo_johnson, fit_lambdas
from temporal_graph.graph import birth_days
from temporal_graph.snapshot import snapshot

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    pairs: np.ndarray
    values: np.ndarray
    columns: list
    t0_day: int
    config: FeatureConfig
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return int(self.values.shape[0])


class PairFeatureExtractor:
    """Computes node vectors and pair blocks for one (graph, t0, config)."""

    def __init__(self, g, t0_day, config):
        self.graph = g
        self.t0_day = int(t0_day)
        self.config = config
        self.definition = config.definition
        self.snapshot_days = config.snapshot_days(t0_day)
        self.metrics = [
            SnapshotMetrics(snapshot(g, day), config.damping, config.tolerance) for day in self.snapshot_days
        ]
        self.node_columns = node_columns(config)
        self.columns = matrix_columns(config)

    @property
    def t0_snapshot(self):
        return self.metrics[0].snapshot

    def node_vectors(self, nodes):
        return series_block(
            self.metrics, nodes, self.definition["node_features"], self.definition["node_derivatives"]
        )

    def pair_block(self, pairs):
        names = self.definition["pair_features"]
        snaps = [self.metrics[i].snapshot for i in pair_snapshot_indices(self.config)]
        rows = []
        for u, v in pairs:
            row = []
            for snap in snaps:
                sims = pair_similarity_features(snap, u, v)
                row += [sims[name] for name in names]
            rows.append(row)
        return rows

    def assemble(self, node_u, node_v, pair_block):
        n = node_u.shape[0]
        interleaved = np.stack([node_u, node_v], axis=2).reshape(n, 2 * node_u.shape[1])
        pair_width = len(self.columns) - interleaved.shape[1]
        return np.hstack([interleaved, np.asarray(pair_block, dtype=np.float64).reshape(n, pair_width)])


def _pair_block_chunk(pairs, extractor):
    return extractor.pair_block(pairs)


def impute_unseen(g, t0_day, window, extractor):
    """
    Average node vector over nodes whose first edge falls in
    (t0 - window, t0]. Zero vector, with a warning, when no node was born
    in the window.
    """
    born = birth_days(g)
    recent = np.flatnonzero((born > t0_day - window) & (born <= t0_day))
    width = len(extractor.node_columns)
    if recent.size == 0:
        logger.warning(f"No nodes born in ({t0_day - window}, {t0_day}]; imputing zeros for unseen nodes")
        return np.zeros(width)
    logger.info(f"Imputation vector averaged over {recent.size} recently born nodes")
    return extractor.node_vectors(recent).mean(axis=0)


def build_feature_matrix(g, pairs, t0_day, config, threads=1):
    """Feature rows for ``pairs`` at ``t0_day``, in input order."""
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    extractor = PairFeatureExtractor(g, t0_day, config)
    logger.info(f"Extracting '{config.feature_set}' features for {len(pairs)} pairs at t0={t0_day}")

    nodes, inverse = np.unique(pairs.ravel(), return_inverse=True)
    node_matrix = extractor.node_vectors(nodes)

    meta = {"imputed_nodes": 0}
    if config.impute and len(nodes):
        unseen = extractor.t0_snapshot.degree[nodes] == 0
        if unseen.any():
            node_matrix[unseen] = impute_unseen(g, t0_day, config.impute_window, extractor)
            meta["imputed_nodes"] = int(unseen.sum())

    inverse = inverse.reshape(-1, 2)
    node_u = node_matrix[inverse[:, 0]]
    node_v = node_matrix[inverse[:, 1]]
    pair_list = [tuple(p) for p in pairs.tolist()]
    block = map_chunks(_pair_block_chunk, pair_list, threads, extractor)
    values = extractor.assemble(node_u, node_v, block)

    if config.yeo_johnson:
        lambdas = config.yeo_johnson_lambdas
        if lambdas is None:
            lambdas = fit_lambdas(values)
            config = config.model_copy(update={"yeo_johnson_lambdas": lambdas})
        values = apply_yeo_johnson(values, lambdas)

    if not np.isfinite(values).all():
        raise LinkBenchError("feature matrix contains non-finite values")

    return FeatureMatrix(
        pairs=pairs, values=values, columns=list(extractor.columns),
        t0_day=int(t0_day), config=config, meta=meta,
    )


def baseline15_features(g, u, v, t0_day):
    """
    Degrees of u and v, their 2-hop neighbourhood sizes, and their shared
    neighbours at t0, t0 - 365 and t0 - 730.
    """
    snaps = [snapshot(g, day) for day in FeatureConfig().snapshot_days(t0_day)]
    degrees, hops, shared = [], [], []
    for snap in snaps:
        degrees += [float(snap.degree[u]), float(snap.degree[v])]
        hops += [float(two_hop_size(snap, u)), float(two_hop_size(snap, v))]
        shared.append(pair_similarity_features(snap, u, v)["cn"])
    return np.asarray(degrees + hops + shared)
