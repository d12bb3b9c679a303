"""Shared fixtures for the MSTME test suite."""

import math

import networkx as nx
import pytest

from graph.models import PointSet


@pytest.fixture
def plus_points() -> PointSet:
    """Five points: a centre, two on the x axis and two on the y axis.

    The MST is the star at vertex 1 (weight 4); for lambda = 1 the optimum
    trades one unit edge for a sqrt(2) diagonal to raise the degree entropy.
    """
    return PointSet.from_coordinates([(0, 0), (1, 0), (2, 0), (1, 1), (1, -1)])


@pytest.fixture
def unit_square() -> PointSet:
    return PointSet.from_coordinates([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def assert_spanning_tree():
    """Check with networkx that edge keys form a spanning tree over range(n)."""

    def check(n, edge_keys):
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(edge_keys)
        assert graph.number_of_edges() == n - 1
        assert nx.is_tree(graph)

    return check


@pytest.fixture
def complete_graph():
    """Build the weighted complete graph of a point set as a networkx Graph."""

    def build(point_set):
        graph = nx.Graph()
        for u in range(len(point_set)):
            for v in range(u + 1, len(point_set)):
                a, b = point_set[u], point_set[v]
                graph.add_edge(u, v, weight=math.hypot(b.x - a.x, b.y - a.y))
        return graph

    return build
