"""
Feature matrix CSV files: a ``# {json}`` header line with the feature
configuration and column order, then ``u,v,<columns>`` rows.
"""

import json
import logging
import os

import numpy as np
import pandas as pd

from common.errors import MissingInputError, SchemaMismatchError
from feature_store.definitions import FeatureConfig
from feature_store.extractors import FeatureMatrix

# Set up logging
logger = logging.getLogger(__name__)

FORMAT_NAME = "linkbench-features"


def feature_header(fm):
    return {
        "format": FORMAT_NAME,
        "feature_set": fm.config.feature_set,
        "version": fm.config.definition["version"],
        "t0_day": fm.t0_day,
        "columns": list(fm.columns),
        "config": fm.config.model_dump(),
    }


def write_feature_csv(fm, path):
    logger.info(f"Writing {len(fm)} feature rows ({len(fm.columns)} columns) to {path}")
    frame = pd.DataFrame(fm.values, columns=fm.columns)
    frame.insert(0, "v", fm.pairs[:, 1])
    frame.insert(0, "u", fm.pairs[:, 0])
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("# " + json.dumps(feature_header(fm), sort_keys=True) + "\n")
        frame.to_csv(f, index=False, lineterminator="\n")


def read_feature_header(path):
    if not os.path.exists(path):
        raise MissingInputError(f"feature file not found: {path}", path=path)
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline().strip()
    if not first.startswith("#"):
        raise SchemaMismatchError(f"feature file {path} lacks its '# {{header}}' line")
    try:
        header = json.loads(first[1:].strip())
    except ValueError as e:
        raise SchemaMismatchError(f"feature file {path} has an unreadable header: {e}") from e
    if header.get("format") != FORMAT_NAME:
        raise SchemaMismatchError(f"feature file {path} is not a {FORMAT_NAME} file")
    return header


def read_feature_csv(path):
    header = read_feature_header(path)
    config = FeatureConfig(**header["config"])
    if header["version"] != config.definition["version"]:
        raise SchemaMismatchError(
            f"feature file {path} was written with {header['feature_set']} v{header['version']}, "
            f"registry has v{config.definition['version']}"
        )
    frame = pd.read_csv(path, skiprows=1, float_precision="round_trip")
    expected = ["u", "v"] + list(header["columns"])
    if list(frame.columns) != expected:
        raise SchemaMismatchError(f"feature file {path} columns do not match its header")
    logger.info(f"Loaded {len(frame)} feature rows from {path}")
    return FeatureMatrix(
        pairs=frame[["u", "v"]].to_numpy(dtype=np.int64).reshape(-1, 2),
        values=frame[header["columns"]].to_numpy(dtype=np.float64),
        columns=list(header["columns"]),
        t0_day=int(header["t0_day"]),
        config=config,
    )
