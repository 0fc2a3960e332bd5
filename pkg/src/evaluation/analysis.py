"""
Descriptive network analysis over cutoff dates: components, degree
distribution, clustering, hubs, power-law tail exponent and centralization.
"""

import json
import logging
import math
import os
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
import pandas as pd

from common.errors import ConfigError, InsufficientDataError
from feature_store.node_metrics import average_clustering
from temporal_graph.snapshot import connected_components, degree_histogram, snapshot

# Set up logging
logger = logging.getLogger(__name__)

TOP_NODES = 10


def centralization_curve(s):
    """
    Cumulative (node fraction, edge-endpoint fraction) with nodes sorted by
    increasing degree, starting at (0, 0) and ending at (1, 1).
    """
    if s.num_edges == 0:
        raise InsufficientDataError("centralization curve is undefined for a graph without edges")
    ordered = np.sort(s.degree, kind="stable").astype(np.float64)
    edge_fraction = np.cumsum(ordered) / ordered.sum()
    node_fraction = np.arange(1, s.num_nodes + 1) / s.num_nodes
    return np.column_stack([np.concatenate([[0.0], node_fraction]), np.concatenate([[0.0], edge_fraction])])


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    n_tail: int
    k_min: float


def fit_power_law(samples, k_min, min_samples=10):
    """α̂ = 1 + n / Σ ln(k_i / (k_min - 0.5)) over samples >= k_min."""
    if k_min < 1:
        raise ConfigError(f"k_min must be >= 1, got {k_min}")
    values = np.asarray(samples, dtype=np.float64)
    tail = values[values >= k_min]
    if tail.size < min_samples:
        raise InsufficientDataError(
            f"power-law fit needs at least {min_samples} samples >= {k_min}, got {tail.size}",
            tail=int(tail.size),
        )
    if np.all(tail == k_min) and tail.size > 1:
        raise InsufficientDataError(f"all {tail.size} tail samples equal k_min={k_min}; exponent is not identifiable")
    log_sum = float(np.sum(np.log(tail / (k_min - 0.5))))
    alpha = 1.0 + tail.size / log_sum
    return PowerLawFit(alpha=alpha, n_tail=int(tail.size), k_min=float(k_min))


@dataclass
class CutoffReport:
    cutoff_day: int
    num_nodes: int
    num_edges: int
    component_sizes: list
    isolated: int
    largest_component: int
    degree_histogram: dict
    average_clustering: float
    top_nodes: list
    power_law: Optional[PowerLawFit]
    centralization: Optional[np.ndarray]

    def summary(self):
        record = asdict(self)
        record.pop("centralization")
        record.pop("degree_histogram")
        record["components_gt1"] = len(self.component_sizes)
        record["component_sizes"] = self.component_sizes[:TOP_NODES]
        return record


def top_degree_nodes(s, vocab=None, count=TOP_NODES):
    order = np.lexsort((np.arange(s.num_nodes), -s.degree))
    rows = []
    for node in order[:count].tolist():
        if s.degree[node] == 0:
            break
        rows.append({
            "node": int(node),
            "degree": int(s.degree[node]),
            "concept": vocab.get(node) if vocab else None,
        })
    return rows


def analysis_report(g, cutoff_days, k_min=1):
    reports = []
    for day in cutoff_days:
        s = snapshot(g, day)
        components = connected_components(s)
        fit = None
        curve = None
        if s.num_edges:
            curve = centralization_curve(s)
            try:
                fit = fit_power_law(s.degree, k_min)
            except InsufficientDataError as e:
                logger.warning(f"Cutoff {day}: no power-law fit ({e})")
        reports.append(CutoffReport(
            cutoff_day=int(day),
            num_nodes=s.num_nodes,
            num_edges=s.num_edges,
            component_sizes=components.sizes,
            isolated=components.isolated,
            largest_component=components.largest,
            degree_histogram=degree_histogram(s),
            average_clustering=average_clustering(s),
            top_nodes=top_degree_nodes(s, g.vocab),
            power_law=fit,
            centralization=curve,
        ))
        alpha = f"{fit.alpha:.3f}" if fit else "n/a"
        logger.info(
            f"Cutoff {day}: {s.num_edges} edges, {len(components.sizes)} components >1, "
            f"largest {components.largest}, isolated {components.isolated}, alpha {alpha}"
        )
    return reports


def _finite_or_none(value):
    return value if value is None or math.isfinite(value) else None


def write_report(reports, out_dir):
    """One CSV per statistic plus summary.json."""
    os.makedirs(out_dir, exist_ok=True)
    components, histogram, hubs, centralization = [], [], [], []
    for r in reports:
        components += [{"cutoff_day": r.cutoff_day, "rank": i + 1, "size": size}
                       for i, size in enumerate(r.component_sizes)]
        histogram += [{"cutoff_day": r.cutoff_day, "degree": k, "count": c}
                      for k, c in sorted(r.degree_histogram.items())]
        hubs += [{"cutoff_day": r.cutoff_day, "rank": i + 1, **row} for i, row in enumerate(r.top_nodes)]
        if r.centralization is not None:
            centralization += [{"cutoff_day": r.cutoff_day, "node_fraction": x, "edge_fraction": y}
                               for x, y in r.centralization.tolist()]

    tables = {
        "components.csv": (components, ["cutoff_day", "rank", "size"]),
        "degree_histogram.csv": (histogram, ["cutoff_day", "degree", "count"]),
        "top_degree.csv": (hubs, ["cutoff_day", "rank", "node", "degree", "concept"]),
        "centralization.csv": (centralization, ["cutoff_day", "node_fraction", "edge_fraction"]),
    }
    for name, (rows, columns) in tables.items():
        pd.DataFrame(rows, columns=columns).to_csv(os.path.join(out_dir, name), index=False, lineterminator="\n")

    summary = []
    for r in reports:
        record = r.summary()
        if record["power_law"]:
            record["power_law"]["alpha"] = _finite_or_none(record["power_law"]["alpha"])
        summary.append(record)
    with open(os.path.join(out_dir, "summary.json"), "w", encoding="utf-8", newline="\n") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info(f"Wrote analysis report for {len(reports)} cutoffs to {out_dir}")
