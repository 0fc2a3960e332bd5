"""
Seeded preferential-attachment generator producing day-stamped temporal graphs.
"""

import logging

import numpy as np
from pydantic import BaseModel, Field, model_validator

from temporal_graph.graph import build_graph

# Set up logging
logger = logging.getLogger(__name__)

RNG_ALGORITHM = "PCG64"
MAX_INTRA_RETRIES = 10


class SyntheticConfig(BaseModel):
    num_nodes: int = Field(ge=2)
    edges_per_new_node: int = Field(default=3, ge=1)
    intra_step_edges: int = Field(default=0, ge=0)
    repeat_edges: int = Field(default=0, ge=0)
    days_per_step: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_clique_fits(self):
        if self.num_nodes < self.edges_per_new_node + 1:
            raise ValueError(
                f"num_nodes ({self.num_nodes}) must be at least edges_per_new_node + 1 "
                f"({self.edges_per_new_node + 1})"
            )
        return self


def _attachment_probabilities(degree, count):
    weights = degree[:count] + 1.0
    return weights / weights.sum()


def generate_synthetic(cfg):
    """
    Grow a graph from an (m+1)-clique at day 0. Step s adds node m+s at day
    s * days_per_step with m distinct targets drawn with probability
    proportional to degree + 1, then intra_step_edges new pairs among the
    existing nodes and repeat_edges repeats of existing pairs.
    """
    rng = np.random.default_rng(cfg.seed)
    n = cfg.num_nodes
    m = cfg.edges_per_new_node

    degree = np.zeros(n, dtype=np.float64)
    adjacent = set()
    pair_list = []
    records = []

    def add(u, v, day):
        pair = (u, v) if u < v else (v, u)
        records.append((pair[0], pair[1], day))
        if pair not in adjacent:
            adjacent.add(pair)
            pair_list.append(pair)
            degree[u] += 1
            degree[v] += 1

    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            add(u, v, 0)

    skipped = 0
    for step in range(1, n - m):
        new_node = m + step
        day = step * cfg.days_per_step

        p = _attachment_probabilities(degree, new_node)
        targets = rng.choice(new_node, size=m, replace=False, p=p)
        for target in targets.tolist():
            add(target, new_node, day)

        if cfg.intra_step_edges:
            p = _attachment_probabilities(degree, new_node)
            for _ in range(cfg.intra_step_edges):
                for _attempt in range(MAX_INTRA_RETRIES):
                    a, b = rng.choice(new_node, size=2, replace=False, p=p).tolist()
                    pair = (a, b) if a < b else (b, a)
                    if pair not in adjacent:
                        add(a, b, day)
                        break
                else:
                    skipped += 1

        for _ in range(cfg.repeat_edges):
            u, v = pair_list[int(rng.integers(len(pair_list)))]
            add(u, v, day)

    if skipped:
        logger.info(f"Skipped {skipped} intra-step edges after {MAX_INTRA_RETRIES} retries each")
    logger.info(f"Generated {len(records)} temporal edges over {n} nodes (seed={cfg.seed}, rng={RNG_ALGORITHM})")
    return build_graph(records, n)
