"""
Edge-list file format.

    num_nodes=<N>
    u<TAB>v<TAB>day
    ...

Blank lines and lines starting with '#' are skipped.
"""

import logging
import os

import pandas as pd

from common.errors import EdgeFileParseError, GraphInputError, MissingInputError
from temporal_graph.graph import build_graph

# Set up logging
logger = logging.getLogger(__name__)

HEADER_KEY = "num_nodes"


def _parse_header(text, line_number):
    key, sep, value = text.partition("=")
    if key.strip() != HEADER_KEY or not sep:
        raise EdgeFileParseError(f"expected header '{HEADER_KEY}=<N>', got '{text}'", line_number)
    try:
        num_nodes = int(value.strip())
    except ValueError:
        raise EdgeFileParseError(f"num_nodes is not an integer: '{value.strip()}'", line_number)
    if num_nodes < 0:
        raise EdgeFileParseError("num_nodes must be non-negative", line_number)
    return num_nodes


def _parse_record(text, line_number):
    fields = text.split("\t")
    if len(fields) != 3:
        raise EdgeFileParseError(f"expected 3 tab-separated fields, got {len(fields)}", line_number)
    try:
        return tuple(int(f) for f in fields)
    except ValueError:
        raise EdgeFileParseError(f"non-integer field in '{text}'", line_number)


def read_edge_file(path, vocab_path=None):
    """Load a TemporalGraph from an edge-list file."""
    if not os.path.exists(path):
        raise MissingInputError(f"edge file not found: {path}", path=path)
    logger.info(f"Loading edge list from {path}")

    num_nodes = None
    records = []
    record_lines = []
    with open(path, "rb") as f:
        for line_number, raw_bytes in enumerate(f, start=1):
            try:
                raw = raw_bytes.decode("utf-8")
            except UnicodeDecodeError:
                raise EdgeFileParseError("invalid UTF-8", line_number)
            text = raw.rstrip("\r\n")
            if not text.strip() or text.lstrip().startswith("#"):
                continue
            if num_nodes is None:
                num_nodes = _parse_header(text.strip(), line_number)
                continue
            records.append(_parse_record(text, line_number))
            record_lines.append(line_number)

    if num_nodes is None:
        raise EdgeFileParseError("missing 'num_nodes=<N>' header", 1)

    vocab = read_vocab(vocab_path) if vocab_path else None
    try:
        graph = build_graph(records, num_nodes, vocab=vocab)
    except GraphInputError as e:
        line = record_lines[e.record_index] if 0 <= e.record_index < len(record_lines) else 1
        raise EdgeFileParseError(str(e).split(": ", 1)[-1], line) from e

    logger.info(f"Loaded {graph.num_edges} edges over {num_nodes} nodes")
    return graph


def write_edge_file(g, path):
    """Write ``g`` in the edge-list format, edges in stored order."""
    logger.info(f"Writing {g.num_edges} edges to {path}")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{HEADER_KEY}={g.num_nodes}\n")
        for u, v, day in g.records():
            f.write(f"{u}\t{v}\t{day}\n")


def read_vocab(path):
    """Read an ``id<TAB>concept`` vocabulary file into a dict."""
    if not os.path.exists(path):
        raise MissingInputError(f"vocabulary file not found: {path}", path=path)
    frame = pd.read_csv(
        path, sep="\t", header=None, names=["id", "concept"], dtype={"id": int, "concept": str},
        quoting=3, keep_default_na=False,
    )
    logger.info(f"Loaded {len(frame)} concept names from {path}")
    return dict(zip(frame["id"].tolist(), frame["concept"].tolist()))
