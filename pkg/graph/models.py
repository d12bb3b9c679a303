"""Domain models for point sets and weighted edges."""

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Tuple

import numpy as np

from graph.errors import DuplicatePointError, InsufficientPointsError, InvalidParameterError

# Canonical undirected edge identity (u < v); geometry is not part of it.
EdgeKey = Tuple[int, int]


def edge_key(a: int, b: int) -> EdgeKey:
    """Return the canonical (min, max) key for an undirected edge."""
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Point2D:
    """A point in the plane with finite coordinates."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameterError(f"Point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class PointSet:
    """Ordered collection of distinct points; the identity of point i is its index i."""

    points: Tuple[Point2D, ...]
    _coords: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = {}
        for index, point in enumerate(self.points):
            key = (point.x, point.y)
            if key in seen:
                raise DuplicatePointError(
                    f"Point {index} ({point.x}, {point.y}) duplicates point {seen[key]}"
                )
            seen[key] = index
        coords = np.array([(p.x, p.y) for p in self.points], dtype=np.float64).reshape(-1, 2)
        coords.setflags(write=False)
        object.__setattr__(self, "_coords", coords)

    @classmethod
    def from_coordinates(cls, coordinates: Iterable[Sequence[float]]) -> "PointSet":
        """Build a point set from (x, y) pairs or an (n, 2) array."""
        return cls(tuple(Point2D(float(x), float(y)) for x, y in coordinates))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point2D]:
        return iter(self.points)

    def __getitem__(self, index: int) -> Point2D:
        return self.points[index]

    def as_array(self) -> np.ndarray:
        """Read-only (n, 2) float64 view of the coordinates."""
        return self._coords

    def require_size(self, minimum: int) -> None:
        """Raise InsufficientPointsError unless the set has at least `minimum` points."""
        if len(self.points) < minimum:
            raise InsufficientPointsError(f"Need at least {minimum} points, got {len(self.points)}")


@dataclass(frozen=True)
class WeightedEdge:
    """Undirected edge between vertex indices u < v with a nonnegative weight."""

    u: int
    v: int
    w: float

    def __post_init__(self):
        if self.u < 0 or self.v < 0:
            raise InvalidParameterError(f"Edge ({self.u}, {self.v}) has a negative vertex index")
        if self.u == self.v:
            raise InvalidParameterError(f"Self-loop on vertex {self.u} is not an edge")
        if self.u > self.v:
            raise InvalidParameterError(f"Edge ({self.u}, {self.v}) is not canonical; use WeightedEdge.of()")
        if not (self.w >= 0 and math.isfinite(self.w)):
            raise InvalidParameterError(f"Edge weight must be finite and nonnegative, got {self.w}")

    @classmethod
    def of(cls, a: int, b: int, w: float) -> "WeightedEdge":
        """Create an edge, canonicalizing endpoint order."""
        u, v = edge_key(a, b)
        return cls(u, v, w)

    @property
    def key(self) -> EdgeKey:
        return (self.u, self.v)

    @property
    def scan_key(self) -> Tuple[float, int, int]:
        """Solver scan order: weight first, then endpoints."""
        return (self.w, self.u, self.v)
