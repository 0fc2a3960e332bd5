"""
Evolving co-occurrence network: day-stamped undirected multigraph over dense
integer concept ids.
"""

import logging
from dataclasses import dataclass, field
from datetime import date, timedelta

import numpy as np

from common.errors import GraphInputError

# Set up logging
logger = logging.getLogger(__name__)

EPOCH = date(1990, 1, 1)
FULL_HISTORY = int(np.iinfo(np.int64).max)
NEVER_BORN = FULL_HISTORY


def year_end_day(year):
    """Cutoff day for calendar year ``year`` (days from 1990-01-01 to Y-12-31)."""
    return (date(year, 12, 31) - EPOCH).days


def day_to_date(day):
    return EPOCH + timedelta(days=int(day))


@dataclass(frozen=True, eq=False)
class TemporalGraph:
    """Edges are stored canonically (u < v) as parallel arrays sorted by day."""

    num_nodes: int
    src: np.ndarray
    dst: np.ndarray
    days: np.ndarray
    vocab: dict = field(default=None)
    dropped_self_loops: int = 0

    @property
    def num_edges(self):
        return int(self.days.shape[0])

    def records(self):
        """Edges as plain (u, v, day) tuples in stored order."""
        return list(zip(self.src.tolist(), self.dst.tolist(), self.days.tolist()))

    def last_day(self):
        return int(self.days[-1]) if self.num_edges else None


def build_graph(edges, num_nodes, vocab=None):
    """
    Canonicalize raw (u, v, day) records into a TemporalGraph.

    Self-loops are dropped and counted. Ids outside [0, num_nodes) raise a
    GraphInputError naming the record index.
    """
    num_nodes = int(num_nodes)
    if num_nodes < 0:
        raise GraphInputError(f"num_nodes must be non-negative, got {num_nodes}", record_index=-1)

    src, dst, days = [], [], []
    dropped = 0
    for index, record in enumerate(edges):
        try:
            u, v, day = (int(x) for x in record)
        except (TypeError, ValueError):
            raise GraphInputError(f"expected (u, v, day) integers, got {record!r}", record_index=index)
        if u < 0 or v < 0 or u >= num_nodes or v >= num_nodes:
            raise GraphInputError(
                f"node id out of range [0, {num_nodes}) in ({u}, {v}, {day})", record_index=index
            )
        if u == v:
            dropped += 1
            continue
        if u > v:
            u, v = v, u
        src.append(u)
        dst.append(v)
        days.append(day)

    if dropped:
        logger.warning(f"Dropped {dropped} self-loop records")

    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    days = np.asarray(days, dtype=np.int64)
    order = np.argsort(days, kind="stable")

    graph = TemporalGraph(
        num_nodes=num_nodes,
        src=src[order],
        dst=dst[order],
        days=days[order],
        vocab=dict(vocab) if vocab is not None else None,
        dropped_self_loops=dropped,
    )
    logger.info(f"Built temporal graph with {num_nodes} nodes and {graph.num_edges} edges")
    return graph


def birth_days(g):
    """Day of each node's first incident edge; NEVER_BORN for nodes without edges."""
    born = np.full(g.num_nodes, NEVER_BORN, dtype=np.int64)
    if g.num_edges:
        np.minimum.at(born, g.src, g.days)
        np.minimum.at(born, g.dst, g.days)
    return born
