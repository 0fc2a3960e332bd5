"""
Tests for network analysis reports.
"""

import json
import math
import os
import sys

import numpy as np
import pandas as pd
import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from common.errors import ConfigError, InsufficientDataError
from evaluation.analysis import analysis_report, centralization_curve, fit_power_law, write_report
from temporal_graph.graph import build_graph
from temporal_graph.snapshot import snapshot


def _discrete_power_law(alpha, k_min, size, seed):
    r = np.random.default_rng(seed).random(size)
    return np.floor((k_min - 0.5) * (1.0 - r) ** (-1.0 / (alpha - 1.0)) + 0.5)


def test_centralization_of_regular_graph_is_diagonal():
    ring = snapshot(build_graph([(i, (i + 1) % 10, 0) for i in range(10)], 10), 0)
    curve = centralization_curve(ring)
    assert curve[:, 1] == pytest.approx(curve[:, 0])


def test_centralization_of_star():
    n = 8
    star = snapshot(build_graph([(0, i, 0) for i in range(1, n)], n), 0)
    curve = centralization_curve(star)
    assert curve[n - 1, 0] == pytest.approx((n - 1) / n)
    assert curve[n - 1, 1] == pytest.approx(0.5)
    assert curve[-1].tolist() == [1.0, 1.0]
    assert np.all(np.diff(curve[:, 1]) >= 0)


def test_centralization_of_empty_graph_is_an_error():
    with pytest.raises(InsufficientDataError):
        centralization_curve(snapshot(build_graph([], 3), 0))


def test_power_law_single_sample_formula():
    k_min = 4
    fit = fit_power_law([math.e * (k_min - 0.5)], k_min, min_samples=1)
    assert fit.alpha == pytest.approx(2.0)
    assert fit.n_tail == 1


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_power_law_recovery(seed):
    samples = _discrete_power_law(2.5, 5, 100_000, seed)
    fit = fit_power_law(samples, 5)
    assert abs(fit.alpha - 2.5) <= 0.1


def test_power_law_errors():
    with pytest.raises(InsufficientDataError):
        fit_power_law([5, 6, 7], 5)
    with pytest.raises(InsufficientDataError):
        fit_power_law([3] * 20, 3)
    with pytest.raises(ConfigError):
        fit_power_law([5] * 20, 0)


def test_report_on_g1(g1):
    report = analysis_report(g1, [0])[0]
    assert report.component_sizes == [5]
    assert report.isolated == 0
    assert report.degree_histogram == {1: 1, 2: 3, 3: 1}
    assert report.average_clustering == pytest.approx(7 / 15)
    assert report.top_nodes[0] == {"node": 2, "degree": 3, "concept": None}
    assert [row["node"] for row in report.top_nodes] == [2, 0, 1, 3, 4]
    assert report.power_law is None


def test_report_uses_concept_names():
    g = build_graph([(0, 1, 0), (0, 2, 0)], 3, vocab={0: "graphene", 1: "laser", 2: "qubit"})
    report = analysis_report(g, [0])[0]
    assert report.top_nodes[0]["concept"] == "graphene"


def test_report_on_empty_graph():
    report = analysis_report(build_graph([], 4), [10])[0]
    assert report.component_sizes == []
    assert report.isolated == 4
    assert report.degree_histogram == {0: 4}
    assert report.top_nodes == []
    assert report.centralization is None


def test_largest_component_grows():
    rng = np.random.default_rng(0)
    records = [(int(a), int(b), int(d)) for a, b, d in
               zip(rng.integers(100, size=300), rng.integers(100, size=300), rng.integers(50, size=300))]
    g = build_graph(records, 100)
    reports = analysis_report(g, list(range(0, 50, 5)))
    largest = [r.largest_component for r in reports]
    assert largest == sorted(largest)


def test_write_report(tmp_path, g1):
    write_report(analysis_report(g1, [-1, 0]), str(tmp_path))
    summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))
    assert [s["cutoff_day"] for s in summary] == [-1, 0]
    assert summary[1]["num_edges"] == 5
    components = pd.read_csv(tmp_path / "components.csv")
    assert components["size"].tolist() == [5]
    histogram = pd.read_csv(tmp_path / "degree_histogram.csv")
    assert histogram[histogram.cutoff_day == -1]["count"].tolist() == [5]
    for name in ("top_degree.csv", "centralization.csv"):
        assert (tmp_path / name).exists()
