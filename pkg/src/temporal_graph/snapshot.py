"""
Immutable simple-graph views of a TemporalGraph at a cutoff day.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components as _csgraph_components

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Snapshot:
    """
    adjacency[i] is the sorted tuple of i's neighbors; multiplicity maps each
    canonical pair (u < v) to the number of temporal edges up to cutoff_day.
    """

    cutoff_day: int
    num_nodes: int
    adjacency: tuple
    multiplicity: dict
    degree: np.ndarray

    @property
    def num_edges(self):
        return len(self.multiplicity)

    @cached_property
    def neighbor_sets(self):
        return tuple(frozenset(nbrs) for nbrs in self.adjacency)

    def neighbors(self, node):
        return self.adjacency[node]

    def has_edge(self, u, v):
        if u > v:
            u, v = v, u
        return (u, v) in self.multiplicity

    def multiplicity_of(self, u, v):
        if u > v:
            u, v = v, u
        return self.multiplicity.get((u, v), 0)

    @cached_property
    def csr(self):
        """Binary symmetric adjacency as a scipy CSR matrix."""
        rows = np.repeat(np.arange(self.num_nodes), self.degree)
        cols = np.fromiter(
            (v for nbrs in self.adjacency for v in nbrs), dtype=np.int64, count=int(self.degree.sum())
        )
        data = np.ones(rows.shape[0], dtype=np.float64)
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.num_nodes, self.num_nodes))

    def to_csr(self):
        return self.csr


def snapshot(g, cutoff_day):
    """Simple graph induced by all temporal edges with day <= cutoff_day."""
    n = g.num_nodes
    cut = int(np.searchsorted(g.days, cutoff_day, side="right"))

    if cut == 0:
        return Snapshot(
            cutoff_day=int(cutoff_day),
            num_nodes=n,
            adjacency=tuple(() for _ in range(n)),
            multiplicity={},
            degree=np.zeros(n, dtype=np.int64),
        )

    keys = g.src[:cut] * n + g.dst[:cut]
    unique_keys, counts = np.unique(keys, return_counts=True)
    us = unique_keys // n
    vs = unique_keys % n
    multiplicity = dict(zip(zip(us.tolist(), vs.tolist()), counts.tolist()))

    owners = np.concatenate([us, vs])
    others = np.concatenate([vs, us])
    order = np.lexsort((others, owners))
    owners, others = owners[order], others[order]
    degree = np.bincount(owners, minlength=n).astype(np.int64)
    splits = np.cumsum(degree)[:-1]
    adjacency = tuple(tuple(part.tolist()) for part in np.split(others, splits))

    return Snapshot(
        cutoff_day=int(cutoff_day),
        num_nodes=n,
        adjacency=adjacency,
        multiplicity=multiplicity,
        degree=degree,
    )


@dataclass(frozen=True)
class ComponentSummary:
    sizes: list
    isolated: int

    @property
    def largest(self):
        return self.sizes[0] if self.sizes else 0


def connected_components(s):
    """Sizes of components with more than one node (descending) plus isolated count."""
    isolated = int(np.count_nonzero(s.degree == 0))
    if s.num_nodes == 0 or s.num_edges == 0:
        return ComponentSummary(sizes=[], isolated=isolated)
    _, labels = _csgraph_components(s.csr, directed=False)
    sizes = np.bincount(labels)
    sizes = sorted((int(x) for x in sizes if x > 1), reverse=True)
    return ComponentSummary(sizes=sizes, isolated=isolated)


def degree_histogram(s):
    """Map degree -> number of nodes with that degree."""
    values, counts = np.unique(s.degree, return_counts=True)
    return {int(k): int(c) for k, c in zip(values, counts)}
