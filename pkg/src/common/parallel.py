"""
Chunked parallel map with deterministic output order.
"""

import logging

import numpy as np
from joblib import Parallel, delayed

# Set up logging
logger = logging.getLogger(__name__)

MIN_CHUNK_SIZE = 2048


def chunk_bounds(total, threads, min_chunk=MIN_CHUNK_SIZE):
    """Split range(total) into contiguous [start, stop) chunks."""
    if total == 0:
        return []
    n_chunks = max(1, min(threads, -(-total // min_chunk)))
    edges = np.linspace(0, total, n_chunks + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def map_chunks(func, items, threads=1, *args):
    """
    Apply ``func(chunk, *args)`` over contiguous chunks of ``items`` and
    concatenate the per-chunk lists in input order. The result does not
    depend on ``threads``.
    """
    bounds = chunk_bounds(len(items), threads)
    if threads <= 1 or len(bounds) <= 1:
        results = [func(items[a:b], *args) for a, b in bounds]
    else:
        logger.debug(f"Dispatching {len(bounds)} chunks to {threads} workers")
        results = Parallel(n_jobs=threads)(delayed(func)(items[a:b], *args) for a, b in bounds)
    out = []
    for part in results:
        out.extend(part)
    return out
