"""
Shared fixtures for the test suite.
"""

import os
import sys

import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from temporal_graph.graph import build_graph

G1_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]


@pytest.fixture
def g1():
    """Five nodes, edges (0,1),(0,2),(1,2),(2,3),(3,4), all on day 0."""
    return build_graph([(u, v, 0) for u, v in G1_EDGES], 5)


@pytest.fixture
def g1_growing():
    """G1 plus a new (0,3) edge on day 1."""
    return build_graph([(u, v, 0) for u, v in G1_EDGES] + [(0, 3, 1)], 5)
