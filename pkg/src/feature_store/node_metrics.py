"""
Node-level metrics on snapshots: PageRank, clustering, neighbour degree,
2-hop neighbourhood size, and their evolution across snapshots.
"""

import logging
from functools import cached_property
from itertools import combinations

import numpy as np

from temporal_graph.snapshot import snapshot

# Set up logging
logger = logging.getLogger(__name__)

MAX_PAGERANK_ITERATIONS = 1000
SERIES_BASE_FEATURES = ("degree", "clustering", "pagerank", "mean_neighbor_degree")


def pagerank(s, damping=0.85, tolerance=1e-10):
    """
    Power iteration on the undirected snapshot; mass of isolated nodes is
    spread uniformly. Stops when the L1 change drops below ``tolerance`` or
    after 1000 iterations.
    """
    n = s.num_nodes
    if n == 0:
        return np.zeros(0)
    x = np.full(n, 1.0 / n)
    if s.num_edges == 0:
        return x

    A = s.csr
    degree = s.degree.astype(np.float64)
    dangling = degree == 0
    inv_degree = np.divide(1.0, degree, out=np.zeros(n), where=~dangling)

    for iteration in range(MAX_PAGERANK_ITERATIONS):
        spread = A.T @ (x * inv_degree)
        x_new = damping * (spread + x[dangling].sum() / n) + (1.0 - damping) / n
        x_new /= x_new.sum()
        change = np.abs(x_new - x).sum()
        x = x_new
        if change < tolerance:
            break
    else:
        logger.warning(f"PageRank did not converge within {MAX_PAGERANK_ITERATIONS} iterations")
    return x


def clustering_coefficient(s, node):
    """Triangles through ``node`` over k(k-1)/2; 0 for k < 2."""
    nbrs = s.adjacency[node]
    k = len(nbrs)
    if k < 2:
        return 0.0
    sets = s.neighbor_sets
    links = sum(1 for a, b in combinations(nbrs, 2) if b in sets[a])
    return links / (k * (k - 1) / 2.0)


def clustering_coefficients(s):
    """Clustering coefficient of every node, via triangle counts from A²∘A."""
    n = s.num_nodes
    if s.num_edges == 0:
        return np.zeros(n)
    A = s.csr
    triangles = np.asarray((A @ A).multiply(A).sum(axis=1)).ravel() / 2.0
    k = s.degree.astype(np.float64)
    pairs = k * (k - 1) / 2.0
    return np.divide(triangles, pairs, out=np.zeros(n), where=k >= 2)


def average_clustering(s):
    if s.num_nodes == 0:
        return 0.0
    return float(clustering_coefficients(s).mean())


def mean_neighbor_degree(s):
    """Average degree of each node's neighbours; 0 for isolated nodes."""
    n = s.num_nodes
    if s.num_edges == 0:
        return np.zeros(n)
    k = s.degree.astype(np.float64)
    total = s.csr @ k
    return np.divide(total, k, out=np.zeros(n), where=k > 0)


def two_hop_size(s, node):
    """Distinct nodes within distance 2 of ``node``, excluding itself."""
    sets = s.neighbor_sets
    reach = set(sets[node])
    for z in s.adjacency[node]:
        reach |= sets[z]
    reach.discard(node)
    return len(reach)


def two_hop_sizes(s):
    n = s.num_nodes
    if s.num_edges == 0:
        return np.zeros(n)
    A = s.csr
    reach = (A + A @ A).tocoo()
    off_diagonal = (reach.row != reach.col) & (reach.data != 0)
    return np.bincount(reach.row[off_diagonal], minlength=n).astype(np.float64)


class SnapshotMetrics:
    """Lazily computed per-node metric vectors for one snapshot."""

    def __init__(self, snap, damping=0.85, tolerance=1e-10):
        self.snapshot = snap
        self.damping = damping
        self.tolerance = tolerance

    @cached_property
    def degree(self):
        return self.snapshot.degree.astype(np.float64)

    @cached_property
    def two_hop(self):
        return two_hop_sizes(self.snapshot)

    @cached_property
    def clustering(self):
        return clustering_coefficients(self.snapshot)

    @cached_property
    def pagerank(self):
        return pagerank(self.snapshot, self.damping, self.tolerance)

    @cached_property
    def mean_neighbor_degree(self):
        return mean_neighbor_degree(self.snapshot)

    def metric(self, name):
        return getattr(self, name)


def series_block(metrics, nodes, features, derivatives):
    """
    Node vectors: raw values per snapshot (newest first) for each feature,
    then f0 - f1 per feature, then f0 - 2 f1 + f2 per feature.

    A node with no edges in a snapshot has every metric 0 there, PageRank
    included.
    """
    nodes = np.asarray(nodes, dtype=np.int64)
    present = [m.degree[nodes] > 0 for m in metrics]
    raw = {
        f: np.column_stack([np.where(alive, m.metric(f)[nodes], 0.0) for m, alive in zip(metrics, present)])
        for f in features
    }
    blocks = [raw[f] for f in features]
    if derivatives and len(metrics) >= 2:
        blocks += [(raw[f][:, 0] - raw[f][:, 1])[:, None] for f in features]
    if derivatives and len(metrics) >= 3:
        blocks += [(raw[f][:, 0] - 2.0 * raw[f][:, 1] + raw[f][:, 2])[:, None] for f in features]
    if not blocks:
        return np.zeros((len(nodes), 0))
    return np.hstack(blocks)


def node_feature_series(g, node, snapshot_days, damping=0.85, tolerance=1e-10, features=SERIES_BASE_FEATURES):
    """Base features of ``node`` at each snapshot day plus first and second differences."""
    metrics = [SnapshotMetrics(snapshot(g, day), damping, tolerance) for day in snapshot_days]
    return series_block(metrics, [node], features, derivatives=True)[0]
