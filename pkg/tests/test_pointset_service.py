"""Tests for point file parsing, distances and synthetic point sets."""

import io
import math

import numpy as np
import pytest

from graph.errors import DuplicatePointError, InsufficientPointsError, InvalidParameterError, PointSetParseError
from graph.models import Point2D, PointSet, WeightedEdge
from services.pointset_service import (
    APPENDAGE_HALF_WIDTH,
    RADIAL_JITTER,
    RING_RADIUS,
    SilhouetteShape,
    distance_matrix,
    generate_silhouette,
    load_pointset,
    load_pointset_file,
    min_pairwise_distance,
    pairwise_distances,
    random_pointset,
    save_pointset_file,
)


def test_load_skips_comments_and_blank_lines():
    text = "# outline\n0 0\n\n  1.5   -2e-1  \n# tail\n3 4\n"
    point_set = load_pointset(io.StringIO(text))
    assert list(point_set) == [Point2D(0.0, 0.0), Point2D(1.5, -0.2), Point2D(3.0, 4.0)]


def test_load_accepts_bytes():
    point_set = load_pointset(io.BytesIO(b"0 0\n1 1\n"))
    assert len(point_set) == 2


@pytest.mark.parametrize(
    "text, line_number",
    [
        ("0 0\n1\n", 2),
        ("0 0\n1 2 3\n", 2),
        ("0 0\n1 abc\n", 2),
        ("1_0 0\n0 1\n", 1),
        ("0 0\nnan 1\n", 2),
        ("0 0\n1 inf\n", 2),
        ("0 0\n1 1e999\n", 2),
        ("\u0663 0\n1 5\n", 1),
        ("0 0\n1 \uff15\n", 2),
    ],
)
def test_load_reports_offending_line(text, line_number):
    with pytest.raises(PointSetParseError) as excinfo:
        load_pointset(io.StringIO(text))
    assert excinfo.value.line_number == line_number
    assert str(excinfo.value).startswith(f"line {line_number}:")


def test_load_rejects_duplicates_with_both_lines():
    with pytest.raises(PointSetParseError, match="first seen at line 1") as excinfo:
        load_pointset(io.StringIO("0 0\n1 1\n0.0 0e0\n"))
    assert excinfo.value.line_number == 3


def test_load_requires_two_points():
    with pytest.raises(InsufficientPointsError):
        load_pointset(io.StringIO("# only one\n0 0\n"))


def test_pointset_rejects_duplicates_directly():
    with pytest.raises(DuplicatePointError):
        PointSet.from_coordinates([(0, 0), (0, 0)])


def test_save_and_load_file_preserve_coordinates(tmp_path):
    point_set = random_pointset(25, seed=5)
    path = tmp_path / "points.txt"
    save_pointset_file(point_set, path)
    assert load_pointset_file(path) == point_set


def test_pairwise_distances_scan_order():
    point_set = PointSet.from_coordinates([(0, 0), (3, 0), (0, 1), (1, 1)])
    edges = pairwise_distances(point_set)

    assert len(edges) == 6
    assert [edge.scan_key for edge in edges] == sorted(edge.scan_key for edge in edges)
    assert edges[0] == WeightedEdge(0, 2, 1.0)
    assert edges[1] == WeightedEdge(2, 3, 1.0)
    assert all(edge.u < edge.v for edge in edges)
    assert min_pairwise_distance(point_set) == 1.0


def test_distance_matrix_is_symmetric():
    point_set = random_pointset(10, seed=1)
    matrix = distance_matrix(point_set)
    assert matrix.shape == (10, 10)
    assert np.array_equal(matrix, matrix.T)
    assert np.all(np.diag(matrix) == 0.0)
    for edge in pairwise_distances(point_set):
        assert matrix[edge.u, edge.v] == edge.w


def test_random_pointset_is_reproducible():
    assert random_pointset(8, seed=11, instance=2) == random_pointset(8, seed=11, instance=2)
    assert random_pointset(8, seed=11, instance=2) != random_pointset(8, seed=11, instance=3)
    coords = random_pointset(50, seed=0).as_array()
    assert np.all((coords >= 0) & (coords < 1))


def test_ring_silhouette_stays_near_circle():
    point_set = generate_silhouette(SilhouetteShape.RING, 40, seed=7)
    assert len(point_set) == 40
    radii = np.hypot(point_set.as_array()[:, 0], point_set.as_array()[:, 1])
    assert np.all(np.abs(radii - RING_RADIUS) <= RADIAL_JITTER * RING_RADIUS + 1e-12)
    assert generate_silhouette("ring", 40, seed=7) == point_set


def test_appendage_silhouette_has_thin_strip():
    n = 48
    point_set = generate_silhouette(SilhouetteShape.RING_WITH_APPENDAGE, n, seed=3)
    coords = point_set.as_array()
    strip = coords[coords[:, 0] > RING_RADIUS]

    assert len(point_set) == n
    assert len(strip) == max(4, n // 4)
    assert np.allclose(np.abs(strip[:, 1]), APPENDAGE_HALF_WIDTH)
    # The strip is much thinner than the spacing between neighbouring ring points.
    ring_spacing = 2 * math.pi * RING_RADIUS / (n - len(strip))
    assert 2 * APPENDAGE_HALF_WIDTH < ring_spacing


def test_silhouette_parameter_errors():
    with pytest.raises(InvalidParameterError):
        generate_silhouette("ring", 7, seed=0)
    with pytest.raises(InvalidParameterError):
        generate_silhouette("triangle", 20, seed=0)
