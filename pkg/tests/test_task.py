"""
Tests for benchmark task construction.
"""

import os
import sys

import numpy as np
import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from common.errors import ConfigError, InsufficientPairsError
from data_pipeline.synthetic import SyntheticConfig, generate_synthetic
from task_builder.task import (
    TaskSpec,
    balanced_training_set,
    eligible_pair_count,
    label_multiplicity,
    read_task_file,
    sample_pairs,
    write_task_file,
)
from temporal_graph.graph import build_graph
from temporal_graph.snapshot import snapshot


def _brute_force(g, t0, t1, c, w):
    s0, s1 = snapshot(g, t0), snapshot(g, t1)
    expected = {}
    for u in range(g.num_nodes):
        for v in range(u + 1, g.num_nodes):
            if c is not None and (s0.degree[u] > c or s0.degree[v] > c):
                continue
            if (u, v) in s0.multiplicity:
                continue
            expected[(u, v)] = int(s1.multiplicity.get((u, v), 0) >= w)
    return expected


def _random_multigraph(seed, n=40, records=150):
    rng = np.random.default_rng(seed)
    edges = []
    for _ in range(records):
        u, v = (int(x) for x in rng.integers(n, size=2))
        day = int(rng.integers(0, 21))
        edges.append((u, v, day))
        if rng.random() < 0.3:
            edges.append((u, v, int(rng.integers(day, 21))))
    return build_graph(edges, n)


def test_g1_exhaustive_task(g1):
    task = sample_pairs(g1, TaskSpec(t0_day=0, t1_day=1))
    assert task.pair_tuples() == [(0, 3), (0, 4), (1, 3), (1, 4), (2, 4)]
    assert task.labels.tolist() == [0, 0, 0, 0, 0]


def test_g1_new_edge_is_positive(g1_growing):
    task = sample_pairs(g1_growing, TaskSpec(t0_day=0, t1_day=1, min_multiplicity=1))
    labels = dict(zip(task.pair_tuples(), task.labels.tolist()))
    assert labels == {(0, 3): 1, (0, 4): 0, (1, 3): 0, (1, 4): 0, (2, 4): 0}


def test_zero_cutoff_keeps_only_isolated_nodes():
    g = build_graph([(0, 1, 0), (2, 3, 5), (4, 5, 5)], 7)
    task = sample_pairs(g, TaskSpec(t0_day=0, t1_day=5, degree_cutoff=0))
    assert set(task.pair_tuples()) == {(a, b) for a in range(2, 7) for b in range(a + 1, 7)}
    labels = dict(zip(task.pair_tuples(), task.labels.tolist()))
    assert labels[(2, 3)] == 1 and labels[(4, 5)] == 1
    assert sum(labels.values()) == 2


@pytest.mark.parametrize("c", [0, 2, 5, None])
@pytest.mark.parametrize("w", [1, 2, 3])
def test_exhaustive_task_matches_brute_force(c, w):
    """Eligible pairs and multiplicity labels agree with a double loop."""
    for seed in range(3):
        g = _random_multigraph(seed)
        task = sample_pairs(g, TaskSpec(t0_day=10, t1_day=20, degree_cutoff=c, min_multiplicity=w))
        expected = _brute_force(g, 10, 20, c, w)
        assert dict(zip(task.pair_tuples(), task.labels.tolist())) == expected
        assert len(task) == len(expected) == eligible_pair_count(snapshot(g, 10), c)


def test_exhaustive_order_is_canonical():
    g = _random_multigraph(5)
    pairs = sample_pairs(g, TaskSpec(t0_day=10, t1_day=20)).pair_tuples()
    assert pairs == sorted(pairs)
    assert all(u < v for u, v in pairs)


def test_label_multiplicity_thresholds():
    g = build_graph([(0, 1, 0), (0, 1, 1), (1, 2, 0), (1, 2, 1), (1, 2, 2)], 4)
    s1 = snapshot(g, 2)
    pairs = [(0, 1), (1, 2), (0, 3)]
    assert label_multiplicity(s1, pairs, 3).tolist() == [0, 1, 0]
    assert label_multiplicity(s1, pairs, 1).tolist() == [1, 1, 0]


def test_sampled_pairs_are_valid_and_deterministic():
    g = _random_multigraph(7, n=120, records=300)
    spec = TaskSpec(t0_day=10, t1_day=20, degree_cutoff=5, min_multiplicity=1, num_samples=500, seed=42)
    first = sample_pairs(g, spec)
    second = sample_pairs(g, spec)
    assert np.array_equal(first.pairs, second.pairs)
    assert np.array_equal(first.labels, second.labels)

    expected = _brute_force(g, 10, 20, 5, 1)
    pairs = first.pair_tuples()
    assert len(set(pairs)) == 500
    for pair, label in zip(pairs, first.labels.tolist()):
        assert expected[pair] == label


def test_sampling_threads_do_not_change_result():
    g = _random_multigraph(8, n=120, records=300)
    spec = TaskSpec(t0_day=10, t1_day=20, num_samples=400, seed=3)
    assert np.array_equal(sample_pairs(g, spec, threads=1).labels, sample_pairs(g, spec, threads=2).labels)


def test_too_many_samples_reports_available(g1):
    with pytest.raises(InsufficientPairsError) as info:
        sample_pairs(g1, TaskSpec(t0_day=0, t1_day=1, num_samples=6))
    assert info.value.available == 5


def test_task_spec_validation():
    with pytest.raises(ValueError):
        TaskSpec(t0_day=5, t1_day=5)


def test_balanced_training_set():
    g = generate_synthetic(SyntheticConfig(num_nodes=400, edges_per_new_node=2, seed=0))
    spec = TaskSpec(t0_day=200, t1_day=g.last_day())
    task = balanced_training_set(g, spec, 200, seed=5)
    assert task.num_positive == 100
    assert len(task) == 200
    again = balanced_training_set(g, spec, 200, seed=5)
    assert np.array_equal(task.pairs, again.pairs)

    expected = _brute_force(g, spec.t0_day, spec.t1_day, None, 1)
    for pair, label in zip(task.pair_tuples(), task.labels.tolist()):
        assert expected[pair] == label


def test_balanced_training_set_shortfall():
    g = generate_synthetic(SyntheticConfig(num_nodes=60, edges_per_new_node=1, seed=0))
    spec = TaskSpec(t0_day=50, t1_day=g.last_day())
    with pytest.raises(InsufficientPairsError) as info:
        balanced_training_set(g, spec, 200, seed=0)
    assert info.value.requested == 100
    assert info.value.available < 100
    with pytest.raises(ConfigError):
        balanced_training_set(g, spec, 7, seed=0)


def test_task_file_round_trip(tmp_path, g1_growing):
    task = sample_pairs(g1_growing, TaskSpec(t0_day=0, t1_day=1, seed=3))
    path = tmp_path / "task.tsv"
    write_task_file(task, str(path))
    loaded = read_task_file(str(path))
    assert loaded.spec == task.spec
    assert np.array_equal(loaded.pairs, task.pairs)
    assert np.array_equal(loaded.labels, task.labels)
