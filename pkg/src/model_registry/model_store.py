"""
Versioned text format for trained MLP models.

One ``key values...`` line per field. Floats use Python's shortest
round-trip repr, so a loaded model reproduces the saved one exactly:

    linkbench-mlp v1
    layers 15 100 10 1
    norm_mean <input_dim floats>
    norm_std <input_dim floats>
    pca none | pca <k> <input_dim>, then pca_mean / pca_axes / pca_eigenvalues
    features <json>
    meta <json>
    W0 <rows> <cols> <row-major floats>
    b0 <cols> <floats>
    ...
"""

import json
import logging
import os

import numpy as np

from common.errors import MissingInputError, SchemaMismatchError
from feature_store.transforms import PcaProjection
from model_training.mlp import MlpModel, check_architecture

# Set up logging
logger = logging.getLogger(__name__)

MAGIC = "linkbench-mlp"
FORMAT_VERSION = 1


def _floats(values):
    return " ".join(repr(float(x)) for x in np.asarray(values, dtype=np.float64).ravel())


def _json(value):
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def dump_model(model):
    lines = [
        f"{MAGIC} v{FORMAT_VERSION}",
        "layers " + " ".join(str(s) for s in model.layer_sizes),
        "norm_mean " + _floats(model.norm_mean),
        "norm_std " + _floats(model.norm_std),
    ]
    if model.pca is None:
        lines.append("pca none")
    else:
        lines += [
            f"pca {model.pca.components} {model.pca.input_dim}",
            "pca_mean " + _floats(model.pca.mean),
            "pca_axes " + _floats(model.pca.axes),
            "pca_eigenvalues " + _floats(model.pca.eigenvalues),
        ]
    lines.append("features " + _json(model.feature_header))
    lines.append("meta " + _json(model.meta))
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        lines.append(f"W{i} {w.shape[0]} {w.shape[1]} " + _floats(w))
        lines.append(f"b{i} {b.shape[0]} " + _floats(b))
    return "\n".join(lines) + "\n"


def save_model(model, path):
    logger.info(f"Saving model {model.layer_sizes} to {path}")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dump_model(model))


class _Fields:
    """Key lookup over the model file lines, with format errors naming the file."""

    def __init__(self, text, source):
        self.source = source
        self.values = {}
        for line in text.splitlines()[1:]:
            if not line.strip():
                continue
            key, _, rest = line.partition(" ")
            self.values[key] = rest

    def error(self, message):
        return SchemaMismatchError(f"model file {self.source}: {message}")

    def raw(self, key):
        if key not in self.values:
            raise self.error(f"missing '{key}' line")
        return self.values[key]

    def numbers(self, key, dtype=np.float64):
        text = self.raw(key)
        try:
            return np.array(text.split(), dtype=dtype)
        except ValueError as e:
            raise self.error(f"bad numbers on '{key}' line: {e}") from e

    def json(self, key):
        try:
            return json.loads(self.raw(key))
        except ValueError as e:
            raise self.error(f"bad JSON on '{key}' line: {e}") from e


def parse_model(text, source="<string>"):
    first = text.split("\n", 1)[0].strip()
    if first != f"{MAGIC} v{FORMAT_VERSION}":
        raise SchemaMismatchError(f"model file {source}: expected '{MAGIC} v{FORMAT_VERSION}', got '{first}'")
    fields = _Fields(text, source)

    layer_sizes = [int(s) for s in fields.numbers("layers", np.int64)]
    check_architecture(layer_sizes)
    norm_mean = fields.numbers("norm_mean")
    norm_std = fields.numbers("norm_std")
    if norm_mean.shape != norm_std.shape or not (norm_std > 0).all():
        raise fields.error("normalization vectors are inconsistent")

    pca = None
    pca_line = fields.raw("pca").split()
    if pca_line != ["none"]:
        k, dim = int(pca_line[0]), int(pca_line[1])
        axes = fields.numbers("pca_axes")
        if axes.size != k * dim or dim != norm_mean.size or k != layer_sizes[0]:
            raise fields.error("PCA block does not match the layer sizes")
        pca = PcaProjection(
            mean=fields.numbers("pca_mean"), axes=axes.reshape(k, dim), eigenvalues=fields.numbers("pca_eigenvalues")
        )
    elif norm_mean.size != layer_sizes[0]:
        raise fields.error(f"input width {layer_sizes[0]} does not match {norm_mean.size} normalization columns")

    weights, biases = [], []
    for i, (fan_in, fan_out) in enumerate(zip(layer_sizes[:-1], layer_sizes[1:])):
        w = fields.numbers(f"W{i}")
        b = fields.numbers(f"b{i}")
        if w[:2].tolist() != [fan_in, fan_out] or w.size != 2 + fan_in * fan_out:
            raise fields.error(f"W{i} does not have shape {fan_in}x{fan_out}")
        if b[0] != fan_out or b.size != 1 + fan_out:
            raise fields.error(f"b{i} does not have length {fan_out}")
        weights.append(w[2:].reshape(fan_in, fan_out))
        biases.append(b[1:].copy())

    return MlpModel(
        layer_sizes=layer_sizes,
        weights=weights,
        biases=biases,
        norm_mean=norm_mean,
        norm_std=norm_std,
        pca=pca,
        feature_header=fields.json("features"),
        meta=fields.json("meta") or {},
    )


def load_model(path):
    if not os.path.exists(path):
        raise MissingInputError(f"model file not found: {path}", path=path)
    with open(path, "r", encoding="utf-8") as f:
        model = parse_model(f.read(), source=path)
    logger.info(f"Loaded model {model.layer_sizes} from {path}")
    return model


def describe(model):
    info = {
        "format": f"{MAGIC} v{FORMAT_VERSION}",
        "layers": list(model.layer_sizes),
        "input_dim": model.input_dim,
        "parameters": model.num_parameters,
        "pca_components": model.pca.components if model.pca is not None else None,
    }
    if model.feature_header:
        info["feature_set"] = model.feature_header.get("feature_set")
        info["columns"] = len(model.feature_header.get("columns", []))
    return info
