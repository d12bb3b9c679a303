"""Tests for the Bowyer-Watson Delaunay triangulation."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from scipy.spatial import ConvexHull, Delaunay

from graph.errors import DegenerateGeometryError, InsufficientPointsError
from graph.models import PointSet
from services.delaunay_service import (
    BowyerWatsonTriangulator,
    delaunay_triangulate,
    orientation,
    strictly_in_circumcircle,
)
from services.pointset_service import random_pointset
from services.solver_service import kruskal_mst


def _scipy_edges(point_set):
    edges = set()
    for a, b, c in Delaunay(point_set.as_array()).simplices.tolist():
        for u, v in ((a, b), (b, c), (c, a)):
            edges.add((min(u, v), max(u, v)))
    return edges


def test_predicates():
    assert orientation((0, 0), (1, 0), (0, 1)) == 1
    assert orientation((0, 0), (0, 1), (1, 0)) == -1
    assert orientation((0, 0), (1, 1), (2, 2)) == 0
    assert strictly_in_circumcircle((0, 0), (2, 0), (0, 2), (1, 1))
    # On the circle is not strictly inside.
    assert not strictly_in_circumcircle((0, 0), (2, 0), (0, 2), (2, 2))
    assert not strictly_in_circumcircle((0, 0), (2, 0), (0, 2), (3, 3))


def test_single_triangle():
    point_set = PointSet.from_coordinates([(0, 0), (1, 0), (0, 1)])
    triangulation = delaunay_triangulate(point_set)
    assert triangulation.triangles == ((0, 1, 2),)
    assert triangulation.edges == ((0, 1), (0, 2), (1, 2))


def test_unit_square_has_one_diagonal(unit_square):
    triangulation = delaunay_triangulate(unit_square)
    edges = set(triangulation.edges)
    assert len(triangulation.triangles) == 2
    assert len(edges) == 5
    assert {(0, 1), (1, 2), (2, 3), (0, 3)} <= edges
    assert len(edges & {(0, 2), (1, 3)}) == 1


def test_triangles_are_counter_clockwise():
    point_set = random_pointset(40, seed=12)
    coords = point_set.as_array()
    for a, b, c in delaunay_triangulate(point_set).triangles:
        assert a < b and a < c
        assert orientation(tuple(coords[a]), tuple(coords[b]), tuple(coords[c])) == 1


@pytest.mark.parametrize("seed", range(4))
def test_empty_circumcircle(seed):
    point_set = random_pointset(60, seed)
    coords = point_set.as_array()
    for triangle in delaunay_triangulate(point_set).triangles:
        a, b, c = coords[list(triangle)]
        for index in range(len(point_set)):
            if index in triangle:
                continue
            d = coords[index]
            rows = [[p[0] - d[0], p[1] - d[1], (p[0] - d[0]) ** 2 + (p[1] - d[1]) ** 2] for p in (a, b, c)]
            assert np.linalg.det(np.array(rows)) <= 1e-9


@pytest.mark.parametrize("seed", range(4))
def test_euler_counts_against_convex_hull(seed):
    point_set = random_pointset(80, seed)
    hull_size = len(ConvexHull(point_set.as_array()).vertices)
    triangulation = delaunay_triangulate(point_set)
    n = len(point_set)
    assert len(triangulation.triangles) == 2 * n - hull_size - 2
    assert len(triangulation.edges) == 3 * n - hull_size - 3


@pytest.mark.parametrize("seed", range(3))
def test_matches_scipy_in_general_position(seed):
    point_set = random_pointset(50, seed)
    assert set(delaunay_triangulate(point_set).edges) == _scipy_edges(point_set)


@pytest.mark.parametrize("seed", range(4))
def test_mst_is_subgraph(seed):
    point_set = random_pointset(70, seed)
    assert kruskal_mst(point_set).edge_keys <= set(delaunay_triangulate(point_set).edges)


def test_hull_edges_are_kept():
    point_set = random_pointset(100, seed=31)
    edges = set(delaunay_triangulate(point_set).edges)
    hull = ConvexHull(point_set.as_array())
    for u, v in hull.simplices.tolist():
        assert (min(u, v), max(u, v)) in edges


def test_invariant_under_similarity_transforms():
    point_set = random_pointset(40, seed=17)
    moved = PointSet.from_coordinates(point_set.as_array() * 4.0 + np.array([1000.0, -250.0]))
    assert delaunay_triangulate(moved).edges == delaunay_triangulate(point_set).edges

    coords = point_set.as_array()
    rotated = PointSet.from_coordinates(np.column_stack((-coords[:, 1], coords[:, 0])))
    assert delaunay_triangulate(rotated).edges == delaunay_triangulate(point_set).edges


def test_collinear_input_is_degenerate():
    point_set = PointSet.from_coordinates([(0, 0), (1, 1), (2, 2), (3, 3)])
    with pytest.raises(DegenerateGeometryError, match="collinear"):
        BowyerWatsonTriangulator().triangulate(point_set)


def test_needs_three_points():
    with pytest.raises(InsufficientPointsError):
        delaunay_triangulate(PointSet.from_coordinates([(0, 0), (1, 0)]))


def test_shared_triangulator_is_thread_safe():
    shared = BowyerWatsonTriangulator()
    large, small = random_pointset(300, seed=5), random_pointset(120, seed=6)
    expected = {len(large): shared.triangulate(large), len(small): shared.triangulate(small)}

    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(shared.triangulate, [large, small] * 5))

    for result in results:
        assert result == expected[result.n_vertices]
