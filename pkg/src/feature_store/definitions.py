"""
Feature set registry and feature configuration.
"""

import logging
import os
from functools import lru_cache
from typing import List, Literal, Optional

import yaml
from pydantic import BaseModel, Field, field_validator

from common.errors import ConfigError

# Set up logging
logger = logging.getLogger(__name__)

REGISTRY_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "feature_sets.yaml")
NODE_METRICS = ("degree", "two_hop", "clustering", "pagerank", "mean_neighbor_degree")
PAIR_METRICS = (
    "cn", "jaccard", "dice", "simpson", "cosine", "geometric",
    "adamic_adar", "resource_alloc", "pa_product", "pa_sum", "total_neighbors",
)


@lru_cache(maxsize=1)
def load_feature_sets(path=REGISTRY_PATH):
    with open(path, "r", encoding="utf-8") as f:
        registry = yaml.safe_load(f)
    for name, definition in registry.items():
        unknown = set(definition["node_features"]) - set(NODE_METRICS)
        unknown |= set(definition["pair_features"]) - set(PAIR_METRICS)
        if unknown:
            raise ConfigError(f"feature set '{name}' references unknown metrics {sorted(unknown)}")
    return registry


def feature_set_definition(name):
    registry = load_feature_sets()
    if name not in registry:
        raise ConfigError(f"unknown feature set '{name}'; choose from {sorted(registry)}")
    return registry[name]


class FeatureConfig(BaseModel):
    feature_set: Literal["baseline15", "pairsim", "extended"] = "baseline15"
    snapshot_offsets: List[int] = Field(default_factory=lambda: [0, 365, 730])
    damping: float = Field(default=0.85, gt=0.0, lt=1.0)
    tolerance: float = Field(default=1e-10, gt=0.0)
    yeo_johnson: bool = False
    yeo_johnson_lambdas: Optional[List[float]] = None
    impute: bool = True
    impute_window: int = Field(default=365, ge=1)

    @field_validator("snapshot_offsets")
    @classmethod
    def _offsets_start_at_t0(cls, offsets):
        if not offsets or offsets[0] != 0:
            raise ValueError("snapshot offsets must start at 0 (the t0 snapshot)")
        if any(b <= a for a, b in zip(offsets, offsets[1:])):
            raise ValueError("snapshot offsets must be strictly increasing")
        return offsets

    def snapshot_days(self, t0_day):
        """Cutoff days, newest first: t0, t0 - offset_1, ..."""
        return [int(t0_day) - off for off in self.snapshot_offsets]

    @property
    def definition(self):
        return feature_set_definition(self.feature_set)


def node_columns(config):
    """Per-node column names, in node-vector order."""
    definition = config.definition
    k = len(config.snapshot_offsets)
    names = [f"{f}_s{i}" for f in definition["node_features"] for i in range(k)]
    if definition["node_derivatives"]:
        if k >= 2:
            names += [f"{f}_d1" for f in definition["node_features"]]
        if k >= 3:
            names += [f"{f}_d2" for f in definition["node_features"]]
    return names


def pair_snapshot_indices(config):
    if config.definition["pair_snapshots"] == "newest":
        return [0]
    return list(range(len(config.snapshot_offsets)))


def pair_columns(config):
    return [f"{p}_s{i}" for i in pair_snapshot_indices(config) for p in config.definition["pair_features"]]


def matrix_columns(config):
    """Node columns interleaved for both endpoints, then pair columns."""
    columns = []
    for name in node_columns(config):
        stem, _, suffix = name.rpartition("_")
        columns += [f"{stem}_u_{suffix}", f"{stem}_v_{suffix}"]
    return columns + pair_columns(config)
