"""Shared fixtures: small hand-checked graphs used across the suite."""

import pytest

from jdmkit.core import LabeledGraph


@pytest.fixture
def six_cycle():
    edges = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]
    return LabeledGraph.from_edges(edges)


@pytest.fixture
def two_triangles():
    edges = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]
    return LabeledGraph.from_edges(edges)


@pytest.fixture
def pendant():
    # Three class-1 leaves hanging off a class-3 core on {3..7}; class 3 is
    # unbalanced (vertex 3 carries two leaves, vertex 5 none).
    edges = [
        (3, 0), (3, 1), (4, 2),
        (3, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7),
    ]
    return LabeledGraph.from_edges(edges)
