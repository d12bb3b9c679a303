import logging
import math
import re
from enum import Enum
from pathlib import Path
from typing import IO, List, Union

import numpy as np

from graph.errors import InvalidParameterError, PointSetError, PointSetParseError
from graph.models import Point2D, PointSet, WeightedEdge

logger = logging.getLogger(__name__)

_DECIMAL = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$", re.ASCII)
_NON_FINITE = {"nan", "+nan", "-nan", "inf", "+inf", "-inf", "infinity", "+infinity", "-infinity"}

# Ring radius of the synthetic silhouettes; the appendage strip is 0.1 radius wide.
RING_RADIUS = 1.0
APPENDAGE_HALF_WIDTH = 0.05 * RING_RADIUS
APPENDAGE_LENGTH = 0.8 * RING_RADIUS
RADIAL_JITTER = 0.005
SILHOUETTE_MIN_POINTS = 8


class SilhouetteShape(str, Enum):
    """Synthetic closed outlines standing in for sampled object silhouettes."""

    RING = "ring"
    RING_WITH_APPENDAGE = "ring_with_appendage"


def _parse_coordinate(token: str, line_number: int) -> float:
    if token.lower() in _NON_FINITE:
        raise PointSetParseError(line_number, f"non-finite value {token!r}")
    if not _DECIMAL.match(token):
        raise PointSetParseError(line_number, f"malformed number {token!r}")
    value = float(token)
    if not math.isfinite(value):
        raise PointSetParseError(line_number, f"non-finite value {token!r}")
    return value


def load_pointset(source: IO) -> PointSet:
    """
    Parse a point file: one "x y" pair per line, '#' comments and blank lines ignored.

    Args:
        source: Binary or text stream

    Returns:
        PointSet with points in file order

    Raises:
        PointSetParseError: Malformed line, duplicate point or non-finite value
        InsufficientPointsError: Fewer than 2 points
    """
    raw = source.read()
    if isinstance(raw, bytes):
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise PointSetError(f"Point file is not UTF-8 text: {e}") from e
    else:
        text = raw

    points: List[Point2D] = []
    first_seen = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise PointSetParseError(line_number, f"expected 2 coordinates, found {len(tokens)}")
        x = _parse_coordinate(tokens[0], line_number)
        y = _parse_coordinate(tokens[1], line_number)
        if (x, y) in first_seen:
            raise PointSetParseError(
                line_number, f"duplicate point ({tokens[0]}, {tokens[1]}), first seen at line {first_seen[(x, y)]}"
            )
        first_seen[(x, y)] = line_number
        points.append(Point2D(x, y))

    point_set = PointSet(tuple(points))
    point_set.require_size(2)
    logger.debug(f"Parsed {len(point_set)} points")
    return point_set


def load_pointset_file(path: Union[str, Path]) -> PointSet:
    """Load a point file from disk."""
    with open(path, "rb") as stream:
        point_set = load_pointset(stream)
    logger.info(f"Loaded {len(point_set)} points from {path}")
    return point_set


def serialize_pointset(point_set: PointSet, stream: IO[str]) -> None:
    """Write points as "x y" lines with 17 significant digits (exact round-trip)."""
    for point in point_set:
        stream.write(f"{point.x:.17g} {point.y:.17g}\n")


def save_pointset_file(point_set: PointSet, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as stream:
        serialize_pointset(point_set, stream)
    logger.info(f"Wrote {len(point_set)} points to {path}")


def distance_matrix(point_set: PointSet) -> np.ndarray:
    """Symmetric (n, n) matrix of Euclidean distances."""
    coords = point_set.as_array()
    diff = coords[np.newaxis, :, :] - coords[:, np.newaxis, :]
    return np.hypot(diff[:, :, 0], diff[:, :, 1])


def pairwise_distances(point_set: PointSet) -> List[WeightedEdge]:
    """
    All n(n-1)/2 canonical edges of the complete graph, sorted by (w, u, v).

    This order is the scan order of every solver.
    """
    point_set.require_size(2)
    coords = point_set.as_array()
    iu, iv = np.triu_indices(len(point_set), k=1)
    weights = np.hypot(coords[iv, 0] - coords[iu, 0], coords[iv, 1] - coords[iu, 1])
    order = np.lexsort((iv, iu, weights))
    return [WeightedEdge(int(iu[k]), int(iv[k]), float(weights[k])) for k in order]


def min_pairwise_distance(point_set: PointSet) -> float:
    """Shortest pairwise distance (epsilon) of the point set."""
    return pairwise_distances(point_set)[0].w


def _jitter(rng: np.random.Generator, count: int) -> np.ndarray:
    return rng.uniform(-0.25, 0.25, size=count)


def _ring_points(rng: np.random.Generator, count: int, start: float, stop: float) -> np.ndarray:
    slots = (np.arange(count) + 0.5 + _jitter(rng, count)) / count
    angles = start + (stop - start) * slots
    # Radial jitter keeps ring points off a common circle.
    radii = RING_RADIUS * (1 + rng.uniform(-RADIAL_JITTER, RADIAL_JITTER, size=count))
    return np.column_stack((radii * np.cos(angles), radii * np.sin(angles)))


def _strip_side(rng: np.random.Generator, count: int, y: float, outward: bool) -> np.ndarray:
    slots = (np.arange(count) + 0.5 + _jitter(rng, count)) / count
    if not outward:
        slots = slots[::-1]
    xs = RING_RADIUS + APPENDAGE_LENGTH * slots
    return np.column_stack((xs, np.full(count, y)))


def generate_silhouette(shape: Union[str, SilhouetteShape], n: int, seed: int) -> PointSet:
    """
    Sample n points along a synthetic closed outline.

    `ring` is a jittered circle of radius 1 (radii within 0.5%). `ring_with_appendage` opens the
    circle around angle 0 and attaches a thin strip (width 0.1) sticking out
    along +x, emulating the thin parts of real silhouettes. Points follow the
    outline order. Output is a pure function of (shape, n, seed).
    """
    try:
        shape = SilhouetteShape(shape)
    except ValueError:
        raise InvalidParameterError(
            f"Unknown shape {shape!r}; expected one of {[s.value for s in SilhouetteShape]}"
        )
    if n < SILHOUETTE_MIN_POINTS:
        raise InvalidParameterError(f"Silhouettes need n >= {SILHOUETTE_MIN_POINTS} points, got {n}")

    rng = np.random.default_rng(np.random.SeedSequence(seed))
    if shape is SilhouetteShape.RING:
        coords = _ring_points(rng, n, 0.0, 2 * math.pi)
    else:
        strip_count = max(4, n // 4)
        ring_count = n - strip_count
        gap = 2 * math.asin(APPENDAGE_HALF_WIDTH / RING_RADIUS)
        ring = _ring_points(rng, ring_count, gap, 2 * math.pi - gap)
        bottom = _strip_side(rng, strip_count // 2, -APPENDAGE_HALF_WIDTH, outward=True)
        top = _strip_side(rng, strip_count - strip_count // 2, APPENDAGE_HALF_WIDTH, outward=False)
        coords = np.vstack((ring, bottom, top))

    point_set = PointSet.from_coordinates(coords)
    logger.info(f"Generated {shape.value} silhouette with {n} points (seed={seed})")
    return point_set


def random_pointset(n: int, seed: int, instance: int = 0) -> PointSet:
    """n points drawn uniformly from the unit square; `instance` selects an independent stream."""
    if n < 2:
        raise InvalidParameterError(f"Need n >= 2 points, got {n}")
    rng = np.random.default_rng(np.random.SeedSequence([seed, instance]))
    return PointSet.from_coordinates(rng.random((n, 2)))
