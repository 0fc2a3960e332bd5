"""
Benchmark instances: unconnected candidate pairs at t0 under a degree cutoff,
labelled by whether their edge multiplicity reaches w at t1.
"""

import json
import logging
import os
from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, model_validator

from common.errors import (
    ConfigError,
    InsufficientDataError,
    InsufficientPairsError,
    MissingInputError,
    SchemaMismatchError,
)
from common.parallel import map_chunks
from temporal_graph.snapshot import snapshot

# Set up logging
logger = logging.getLogger(__name__)

EXHAUSTIVE_FRACTION = 0.5


class TaskSpec(BaseModel):
    t0_day: int
    t1_day: int
    degree_cutoff: Optional[int] = Field(default=None, ge=0)
    min_multiplicity: int = Field(default=1, ge=1)
    num_samples: Union[int, Literal["all"]] = "all"
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_dates(self):
        if self.t1_day <= self.t0_day:
            raise ValueError(f"t1_day ({self.t1_day}) must be after t0_day ({self.t0_day})")
        if self.num_samples != "all" and self.num_samples < 1:
            raise ValueError("num_samples must be positive or 'all'")
        return self

    @property
    def horizon_days(self):
        return self.t1_day - self.t0_day


@dataclass(frozen=True, eq=False)
class TaskInstance:
    spec: TaskSpec
    pairs: np.ndarray
    labels: np.ndarray

    def __len__(self):
        return int(self.pairs.shape[0])

    @property
    def num_positive(self):
        return int(self.labels.sum())

    def pair_tuples(self):
        return [tuple(p) for p in self.pairs.tolist()]


def eligible_nodes(s0, degree_cutoff):
    if degree_cutoff is None:
        return np.arange(s0.num_nodes, dtype=np.int64)
    return np.flatnonzero(s0.degree <= degree_cutoff).astype(np.int64)


def eligible_pair_count(s0, degree_cutoff):
    """Unordered pairs of eligible nodes minus the t0 edges among them."""
    e = len(eligible_nodes(s0, degree_cutoff))
    if degree_cutoff is None:
        inside = s0.num_edges
    else:
        mask = s0.degree <= degree_cutoff
        inside = sum(1 for (u, v) in s0.multiplicity if mask[u] and mask[v])
    return e * (e - 1) // 2 - inside


def enumerate_eligible_pairs(s0, nodes):
    """All unconnected eligible pairs in canonical lexicographic order."""
    nodes = np.sort(np.asarray(nodes, dtype=np.int64))
    chunks = []
    for i in range(len(nodes) - 1):
        u = int(nodes[i])
        others = nodes[i + 1:]
        if s0.degree[u]:
            others = others[~np.isin(others, s0.adjacency[u])]
        if others.size:
            chunks.append(np.column_stack([np.full(others.size, u, dtype=np.int64), others]))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    return np.vstack(chunks)


def _label_chunk(pairs, multiplicity, min_multiplicity):
    return [1 if multiplicity.get((u, v), 0) >= min_multiplicity else 0 for u, v in pairs]


def label_multiplicity(s1, pairs, min_multiplicity, threads=1):
    """label_i = 1 iff the t1 multiplicity of pair_i is at least min_multiplicity."""
    pair_list = [tuple(p) for p in np.asarray(pairs, dtype=np.int64).reshape(-1, 2).tolist()]
    labels = map_chunks(_label_chunk, pair_list, threads, s1.multiplicity, min_multiplicity)
    return np.asarray(labels, dtype=np.int8)


def _rejection_sample(rng, s0, nodes, count, accept=None, exclude=()):
    """Uniform sampling without replacement of unconnected eligible pairs."""
    seen = set(exclude)
    out = []
    e = len(nodes)
    while len(out) < count:
        batch = max(1024, 2 * (count - len(out)))
        a = nodes[rng.integers(e, size=batch)].tolist()
        b = nodes[rng.integers(e, size=batch)].tolist()
        for u, v in zip(a, b):
            if u == v:
                continue
            pair = (u, v) if u < v else (v, u)
            if pair in seen or pair in s0.multiplicity:
                continue
            seen.add(pair)
            if accept is not None and not accept(pair):
                continue
            out.append(pair)
            if len(out) == count:
                break
    return out


def sample_pairs(g, spec, threads=1):
    """Sample candidate pairs at t0 and label them against the t1 snapshot."""
    if g.num_nodes < 2:
        raise InsufficientDataError("graph must contain at least two nodes")

    s0 = snapshot(g, spec.t0_day)
    s1 = snapshot(g, spec.t1_day)
    nodes = eligible_nodes(s0, spec.degree_cutoff)
    available = eligible_pair_count(s0, spec.degree_cutoff)
    logger.info(
        f"Sampling pairs: t0={spec.t0_day} t1={spec.t1_day} c={spec.degree_cutoff} "
        f"w={spec.min_multiplicity} eligible_nodes={len(nodes)} eligible_pairs={available}"
    )

    if spec.num_samples == "all":
        pairs = enumerate_eligible_pairs(s0, nodes)
    else:
        requested = int(spec.num_samples)
        if requested > available:
            raise InsufficientPairsError(
                f"requested {requested} pairs but only {available} eligible pairs exist",
                available=available, requested=requested,
            )
        rng = np.random.default_rng(spec.seed)
        if requested > EXHAUSTIVE_FRACTION * available:
            everything = enumerate_eligible_pairs(s0, nodes)
            pairs = everything[rng.choice(len(everything), size=requested, replace=False)]
        else:
            sampled = _rejection_sample(rng, s0, nodes, requested)
            pairs = np.asarray(sampled, dtype=np.int64).reshape(-1, 2)

    labels = label_multiplicity(s1, pairs, spec.min_multiplicity, threads=threads)
    logger.info(f"Sampled {len(pairs)} pairs with {int(labels.sum())} positives")
    return TaskInstance(spec=spec, pairs=pairs, labels=labels)


def positive_candidates(g, spec, s0=None, s1=None):
    """
    Pairs that gain edges in (t0, t1], are eligible and unconnected at t0, and
    reach the multiplicity threshold at t1. Sorted canonically.
    """
    if s0 is None:
        s0 = snapshot(g, spec.t0_day)
    if s1 is None:
        s1 = snapshot(g, spec.t1_day)
    lo = int(np.searchsorted(g.days, spec.t0_day, side="right"))
    hi = int(np.searchsorted(g.days, spec.t1_day, side="right"))
    if hi <= lo:
        return np.empty((0, 2), dtype=np.int64)

    keys = np.unique(g.src[lo:hi] * g.num_nodes + g.dst[lo:hi])
    us, vs = keys // g.num_nodes, keys % g.num_nodes
    cutoff = spec.degree_cutoff
    keep = []
    for u, v in zip(us.tolist(), vs.tolist()):
        if cutoff is not None and (s0.degree[u] > cutoff or s0.degree[v] > cutoff):
            continue
        if (u, v) in s0.multiplicity:
            continue
        if s1.multiplicity.get((u, v), 0) >= spec.min_multiplicity:
            keep.append((u, v))
    return np.asarray(keep, dtype=np.int64).reshape(-1, 2)


def balanced_training_set(g, spec, size, seed):
    """Exactly size/2 positives and size/2 negatives, shuffled deterministically."""
    if size < 2 or size % 2:
        raise ConfigError(f"balanced set size must be a positive even number, got {size}")
    half = size // 2
    s0 = snapshot(g, spec.t0_day)
    s1 = snapshot(g, spec.t1_day)

    positives = positive_candidates(g, spec, s0, s1)
    if len(positives) < half:
        raise InsufficientPairsError(
            f"requested {half} positives but only {len(positives)} are available "
            f"(short by {half - len(positives)})",
            available=int(len(positives)), requested=half,
        )

    available_negatives = eligible_pair_count(s0, spec.degree_cutoff) - len(positives)
    if available_negatives < half:
        raise InsufficientPairsError(
            f"requested {half} negatives but only {available_negatives} are available",
            available=int(available_negatives), requested=half,
        )

    rng = np.random.default_rng(seed)
    chosen = positives[np.sort(rng.choice(len(positives), size=half, replace=False))]

    w = spec.min_multiplicity
    negatives = _rejection_sample(
        rng, s0, eligible_nodes(s0, spec.degree_cutoff), half,
        accept=lambda pair: s1.multiplicity.get(pair, 0) < w,
        exclude=[tuple(p) for p in positives.tolist()],
    )

    pairs = np.vstack([chosen, np.asarray(negatives, dtype=np.int64).reshape(-1, 2)])
    labels = np.concatenate([np.ones(half, dtype=np.int8), np.zeros(half, dtype=np.int8)])
    order = rng.permutation(size)
    balanced_spec = spec.model_copy(update={"num_samples": size, "seed": seed})
    logger.info(f"Built balanced set of {size} pairs from {len(positives)} available positives")
    return TaskInstance(spec=balanced_spec, pairs=pairs[order], labels=labels[order])


def write_task_file(task, path):
    header = json.dumps(task.spec.model_dump(), sort_keys=True)
    logger.info(f"Writing {len(task)} task pairs to {path}")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"# {header}\n")
        for (u, v), label in zip(task.pairs.tolist(), task.labels.tolist()):
            f.write(f"{u}\t{v}\t{label}\n")


def read_task_file(path):
    if not os.path.exists(path):
        raise MissingInputError(f"task file not found: {path}", path=path)
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline().strip()
        has_body = bool(f.readline().strip())
    if not first.startswith("#"):
        raise SchemaMismatchError(f"task file {path} lacks its '# {{spec}}' header")
    try:
        spec = TaskSpec(**json.loads(first[1:].strip()))
    except (ValueError, TypeError) as e:
        raise SchemaMismatchError(f"task file {path} has an unreadable header: {e}") from e

    if not has_body:
        return TaskInstance(spec=spec, pairs=np.empty((0, 2), dtype=np.int64), labels=np.empty(0, dtype=np.int8))

    try:
        frame = pd.read_csv(path, sep="\t", comment="#", header=None, names=["u", "v", "label"], dtype=np.int64)
    except ValueError as e:
        raise SchemaMismatchError(f"task file {path} has malformed rows: {e}") from e
    if not frame["label"].isin([0, 1]).all():
        raise SchemaMismatchError(f"task file {path} has labels outside {{0, 1}}")
    pairs = frame[["u", "v"]].to_numpy(dtype=np.int64).reshape(-1, 2)
    labels = frame["label"].to_numpy(dtype=np.int8)
    return TaskInstance(spec=spec, pairs=pairs, labels=labels)
