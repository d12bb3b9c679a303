import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Sequence, Set, Tuple

from graph.errors import DegenerateGeometryError, InternalInvariantError
from graph.models import EdgeKey, PointSet, edge_key

logger = logging.getLogger(__name__)

# Relative tolerance on normalized orientation / incircle determinants.
PREDICATE_TOLERANCE = 1e-10
# Inradius of the super-triangle in units of the bounding-box diagonal.
SUPER_TRIANGLE_SCALE = 10.0

Coordinate = Tuple[float, float]
Triangle = Tuple[int, int, int]


def orient2d(a: Coordinate, b: Coordinate, c: Coordinate) -> float:
    """Twice the signed area of (a, b, c); positive when counter-clockwise."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def orientation(a: Coordinate, b: Coordinate, c: Coordinate) -> int:
    """+1 counter-clockwise, -1 clockwise, 0 collinear within the relative tolerance."""
    det = orient2d(a, b, c)
    scale = math.hypot(b[0] - a[0], b[1] - a[1]) * math.hypot(c[0] - a[0], c[1] - a[1])
    if abs(det) <= PREDICATE_TOLERANCE * scale:
        return 0
    return 1 if det > 0 else -1


def incircle(a: Coordinate, b: Coordinate, c: Coordinate, d: Coordinate) -> float:
    """Incircle determinant; positive when d lies inside the circle through ccw (a, b, c)."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady)


def strictly_in_circumcircle(a: Coordinate, b: Coordinate, c: Coordinate, d: Coordinate) -> bool:
    """True when d is strictly inside the circumcircle of ccw (a, b, c) beyond the tolerance."""
    lifts = [(p[0] - d[0]) ** 2 + (p[1] - d[1]) ** 2 for p in (a, b, c)]
    scale = max(lifts) ** 2
    if scale == 0:
        return False
    return incircle(a, b, c, d) > PREDICATE_TOLERANCE * scale


@dataclass(frozen=True)
class _InsertionContext:
    """Per-call coordinates: the n input points followed by the three super-triangle vertices."""

    coords: Tuple[Coordinate, ...]
    n: int
    directions: Tuple[Coordinate, ...]


@dataclass(frozen=True)
class Triangulation:
    """Triangles as counter-clockwise vertex-index triples."""

    triangles: Tuple[Triangle, ...]
    n_vertices: int

    @property
    def edges(self) -> Tuple[EdgeKey, ...]:
        return tuple(triangulation_edges(self))


def triangulation_edges(triangulation: Triangulation) -> List[EdgeKey]:
    """Sorted, deduplicated canonical (u < v) edges of all triangles."""
    edges: Set[EdgeKey] = set()
    for a, b, c in triangulation.triangles:
        edges.add(edge_key(a, b))
        edges.add(edge_key(b, c))
        edges.add(edge_key(c, a))
    return sorted(edges)


class ITriangulator(ABC):
    """Interface for planar triangulation."""

    @abstractmethod
    def triangulate(self, point_set: PointSet) -> Triangulation:
        """Triangulate the point set."""
        pass


class BowyerWatsonTriangulator(ITriangulator):
    """
    Incremental Delaunay triangulation inside a super-triangle.

    Points are inserted in index order, so cocircular ties (e.g. the two
    diagonals of a square) resolve deterministically. The super-triangle is
    equilateral, centred on the bounding box, with an inradius of ten
    bounding-box diagonals. Circumcircle tests on triangles that touch a
    super-triangle vertex are evaluated as if that vertex were at infinity in
    its direction, so hull edges are never lost to a finite super-triangle;
    the finite coordinates only break exact ties.
    """

    def triangulate(self, point_set: PointSet) -> Triangulation:
        point_set.require_size(3)
        coords: List[Coordinate] = [(p.x, p.y) for p in point_set]
        n = len(coords)
        self._check_not_collinear(coords)

        xs = [c[0] for c in coords]
        ys = [c[1] for c in coords]
        center = ((min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2)
        diagonal = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
        circumradius = 2 * SUPER_TRIANGLE_SCALE * diagonal
        directions = tuple(
            (math.cos(angle), math.sin(angle)) for angle in (math.pi / 2, 7 * math.pi / 6, 11 * math.pi / 6)
        )
        supers = [(center[0] + circumradius * dx, center[1] + circumradius * dy) for dx, dy in directions]
        context = _InsertionContext(coords=tuple(coords + supers), n=n, directions=directions)

        triangles: Set[Triangle] = {(n, n + 1, n + 2)}
        for index in range(n):
            triangles = self._insert(context, triangles, index)

        result = tuple(sorted(self._canonical(t) for t in triangles if max(t) < n))
        if not result:
            raise DegenerateGeometryError("degenerate: collinear input")
        logger.debug(f"Delaunay triangulation of {n} points: {len(result)} triangles")
        return Triangulation(triangles=result, n_vertices=n)

    def _insert(self, context: _InsertionContext, triangles: Set[Triangle], index: int) -> Set[Triangle]:
        point = context.coords[index]
        bad = [t for t in triangles if self._in_circumcircle(context, t, point)]
        if not bad:
            raise DegenerateGeometryError(f"degenerate: point {index} coincides with the triangulation")

        directed = set()
        for a, b, c in bad:
            directed.update(((a, b), (b, c), (c, a)))
        boundary = [(a, b) for a, b in directed if (b, a) not in directed]

        remaining = triangles.difference(bad)
        for a, b in boundary:
            remaining.add((a, b, index))
        return remaining

    def _in_circumcircle(self, context: _InsertionContext, triangle: Triangle, point: Coordinate) -> bool:
        n = context.n
        real = [v for v in triangle if v < n]
        coords = context.coords
        a, b, c = (coords[v] for v in triangle)

        if len(real) == 3:
            return strictly_in_circumcircle(a, b, c, point)
        if len(real) == 0:
            return True

        if len(real) == 2:
            # Rotate so the real edge (p, q) is followed by the super vertex.
            i = next(k for k in range(3) if triangle[k] >= n)
            p, q = coords[triangle[(i + 1) % 3]], coords[triangle[(i + 2) % 3]]
            # Circle through p, q and a vertex at infinity on the left of p->q: the open left half-plane.
            side = orientation(p, q, point)
            if side != 0:
                return side > 0
            return strictly_in_circumcircle(a, b, c, point)

        # One real vertex r and two super vertices: the limit is a half-plane through r.
        r = coords[real[0]]
        supers = [v - n for v in triangle if v >= n]
        d1, d2 = context.directions[supers[0]], context.directions[supers[1]]
        normal = self._circumcenter_direction(d1, d2)
        offset = (point[0] - r[0], point[1] - r[1])
        length = math.hypot(*offset)
        if length == 0:
            return False
        projection = (offset[0] * normal[0] + offset[1] * normal[1]) / length
        if abs(projection) > PREDICATE_TOLERANCE:
            return projection > 0
        return strictly_in_circumcircle(a, b, c, point)

    @staticmethod
    def _circumcenter_direction(d1: Coordinate, d2: Coordinate) -> Coordinate:
        """Circumcenter of (origin, d1, d2) for unit directions d1, d2."""
        denominator = 2 * (d1[0] * d2[1] - d1[1] * d2[0])
        lift1 = d1[0] ** 2 + d1[1] ** 2
        lift2 = d2[0] ** 2 + d2[1] ** 2
        ux = (lift1 * d2[1] - lift2 * d1[1]) / denominator
        uy = (lift2 * d1[0] - lift1 * d2[0]) / denominator
        return (ux, uy)

    @staticmethod
    def _canonical(triangle: Triangle) -> Triangle:
        """Rotate a ccw triple so its smallest index comes first."""
        k = triangle.index(min(triangle))
        return triangle[k:] + triangle[:k]

    @staticmethod
    def _check_not_collinear(coords: Sequence[Coordinate]) -> None:
        origin = coords[0]
        far = max(coords, key=lambda c: (c[0] - origin[0]) ** 2 + (c[1] - origin[1]) ** 2)
        if not any(orientation(origin, far, c) != 0 for c in coords):
            raise DegenerateGeometryError("degenerate: collinear input")


def delaunay_triangulate(point_set: PointSet) -> Triangulation:
    """Delaunay triangulation by Bowyer–Watson insertion in index order."""
    triangulation = BowyerWatsonTriangulator().triangulate(point_set)
    for triangle in triangulation.triangles:
        if len(set(triangle)) != 3:
            raise InternalInvariantError(f"Triangle {triangle} repeats a vertex")
    return triangulation
