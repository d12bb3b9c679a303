"""Graph core package: models, errors, degree entropy and the rollback forest."""

from graph.errors import (
    ContractError,
    DegenerateGeometryError,
    DuplicatePointError,
    InsufficientPointsError,
    InternalInvariantError,
    InvalidParameterError,
    MSTMEError,
    PointSetError,
    PointSetParseError,
    StabilityError,
)
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
from graph.models import EdgeKey, Point2D, PointSet, WeightedEdge, edge_key

__all__ = [
    "EdgeKey",
    "Point2D",
    "PointSet",
    "WeightedEdge",
    "edge_key",
    "DegreeHistogram",
    "RollbackUnionFind",
    "SpanningForest",
    "add_edge",
    "degree_histogram",
    "forest_new",
    "graph_entropy",
    "objective_cost",
    "remove_edge",
    "shannon_entropy",
    "would_cycle",
    "MSTMEError",
    "PointSetError",
    "PointSetParseError",
    "DuplicatePointError",
    "InsufficientPointsError",
    "InvalidParameterError",
    "DegenerateGeometryError",
    "ContractError",
    "InternalInvariantError",
    "StabilityError",
]
