"""Tests for degree histograms, entropy and the rollback spanning forest."""

import math

import numpy as np
import pytest

from graph.errors import ContractError, InvalidParameterError
from graph.forest import (
    DegreeHistogram,
    RollbackUnionFind,
    SpanningForest,
    add_edge,
    degree_histogram,
    forest_new,
    graph_entropy,
    objective_cost,
    remove_edge,
    shannon_entropy,
    would_cycle,
)
from graph.models import WeightedEdge


def test_entropy_of_single_degree_value_is_exactly_zero():
    assert shannon_entropy(DegreeHistogram(7)) == 0.0
    assert shannon_entropy(DegreeHistogram.from_degrees([1, 1])) == 0.0
    assert shannon_entropy(DegreeHistogram.from_degrees([2, 2, 2])) == 0.0


def test_entropy_golden_values():
    # Two of five vertices covered by one edge.
    histogram = DegreeHistogram.from_degrees([1, 1, 0, 0, 0])
    expected = -(0.4 * math.log2(0.4) + 0.6 * math.log2(0.6))
    assert shannon_entropy(histogram) == pytest.approx(expected, abs=1e-12)
    assert shannon_entropy(histogram) == pytest.approx(0.970950594, abs=1e-9)

    star = DegreeHistogram.from_degrees([1, 4, 1, 1, 1])
    assert shannon_entropy(star) == pytest.approx(0.721928095, abs=1e-9)

    mixed = DegreeHistogram.from_degrees([2, 3, 1, 1, 1])
    assert shannon_entropy(mixed) == pytest.approx(1.370950594, abs=1e-9)

    path = DegreeHistogram.from_degrees([1, 2, 2, 2, 1])
    assert shannon_entropy(path) == pytest.approx(0.970950594, abs=1e-9)


def test_entropy_is_invariant_under_relabeling():
    degrees = [3, 1, 2, 1, 1, 2, 0]
    reference = shannon_entropy(DegreeHistogram.from_degrees(degrees))
    rng = np.random.default_rng(3)
    for _ in range(10):
        permuted = list(rng.permutation(degrees))
        assert shannon_entropy(DegreeHistogram.from_degrees(permuted)) == reference


def test_entropy_without_isolated_vertices():
    histogram = DegreeHistogram.from_degrees([1, 1, 0, 0, 0])
    assert shannon_entropy(histogram, include_isolated=False) == 0.0
    assert shannon_entropy(DegreeHistogram(4), include_isolated=False) == 0.0

    partial = DegreeHistogram.from_degrees([1, 2, 1, 0])
    expected = -(2 / 3 * math.log2(2 / 3) + 1 / 3 * math.log2(1 / 3))
    assert shannon_entropy(partial, include_isolated=False) == pytest.approx(expected, abs=1e-12)


def test_graph_entropy_matches_histogram():
    edges = [(0, 1), (1, 2), (1, 3)]
    assert degree_histogram(5, edges).as_dict() == {0: 1, 1: 3, 3: 1}
    assert graph_entropy(5, edges) == shannon_entropy(DegreeHistogram.from_degrees([1, 3, 1, 1, 0]))


def test_objective_cost_rejects_negative_lambda():
    assert objective_cost(4.0, 0.5, 2.0) == 3.0
    with pytest.raises(InvalidParameterError):
        objective_cost(4.0, 0.5, -0.1)
    with pytest.raises(InvalidParameterError):
        objective_cost(4.0, 0.5, math.nan)


def test_union_find_undo_restores_components():
    uf = RollbackUnionFind(4)
    assert uf.union(0, 1)
    assert uf.union(2, 3)
    assert not uf.union(1, 0)
    assert uf.component_count == 2

    uf.undo()  # no-op union
    uf.undo()
    assert not uf.connected(2, 3)
    assert uf.connected(0, 1)
    assert uf.component_count == 3

    uf.undo()
    assert uf.component_count == 4
    with pytest.raises(ContractError):
        uf.undo()


def test_forest_add_and_remove():
    forest = forest_new(4)
    edge = WeightedEdge(0, 1, 2.5)
    add_edge(forest, edge)

    assert forest.contains(edge)
    assert forest.degrees == (1, 1, 0, 0)
    assert forest.total_weight == 2.5
    assert forest.component_count == 3
    assert forest.histogram.as_dict() == {0: 2, 1: 2}

    remove_edge(forest, edge)
    assert forest.edge_count == 0
    assert forest.total_weight == 0.0
    assert forest.histogram == DegreeHistogram(4)


def test_forest_contract_violations():
    forest = SpanningForest(3)
    first = WeightedEdge(0, 1, 1.0)
    second = WeightedEdge(1, 2, 1.0)
    add_edge(forest, first)
    add_edge(forest, second)

    with pytest.raises(ContractError):
        forest.add_edge(first)
    closing = WeightedEdge(0, 2, 2.0)
    assert would_cycle(forest, closing)
    with pytest.raises(ContractError):
        forest.add_edge(closing)
    with pytest.raises(ContractError):
        forest.remove_edge(first)
    with pytest.raises(ContractError):
        forest.add_edge(WeightedEdge(1, 3, 1.0))

    # The failed add left the forest untouched.
    forest.check_consistency()
    assert forest.is_tree()


def test_forest_requires_two_vertices():
    with pytest.raises(InvalidParameterError):
        SpanningForest(1)


@pytest.mark.parametrize("u, v, w", [(-1, 2, 1.0), (0, 0, 1.0), (2, 1, 1.0), (0, 1, -0.5), (0, 1, math.inf)])
def test_malformed_edges_are_rejected(u, v, w):
    with pytest.raises(InvalidParameterError):
        WeightedEdge(u, v, w)


def test_add_remove_round_trips_restore_state():
    """1000 random tentative add/remove pairs on a growing forest leave no trace."""
    n = 12
    rng = np.random.default_rng(2024)
    forest = SpanningForest(n)

    for step in range(1000):
        u, v = sorted(rng.choice(n, size=2, replace=False).tolist())
        edge = WeightedEdge(u, v, float(rng.uniform(0, 5)))
        if forest.would_cycle(edge):
            continue

        before = (forest.degrees, forest.histogram, forest.total_weight, forest.component_count, forest.edges)
        entropy_before = forest.entropy()
        forest.add_edge(edge)
        forest.check_consistency()
        forest.remove_edge(edge)
        after = (forest.degrees, forest.histogram, forest.total_weight, forest.component_count, forest.edges)
        assert after == before
        assert forest.entropy() == entropy_before

        # Occasionally commit the edge so the forest grows.
        if step % 40 == 0 and not forest.is_tree():
            forest.add_edge(edge)

    forest.check_consistency()
