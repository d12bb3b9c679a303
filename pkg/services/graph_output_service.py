"""Edge-list output format: '# key value' metadata lines followed by 'u v w' edge lines."""

import logging
import math
from dataclasses import dataclass
from typing import IO, Dict, List, Tuple

from graph.errors import PointSetParseError
from graph.forest import graph_entropy, objective_cost
from graph.models import EdgeKey, PointSet, WeightedEdge
from services.delaunay_service import Triangulation
from services.pointset_service import distance_matrix
from services.solver_service import GraphAlgorithm, TreeResult

logger = logging.getLogger(__name__)

HEADER_KEYS = ("algorithm", "lambda", "n", "total_weight", "entropy", "objective")


@dataclass(frozen=True)
class GraphOutput:
    """A built graph with its recomputable metadata header."""

    algorithm: GraphAlgorithm
    lam: float
    n: int
    total_weight: float
    entropy: float
    objective: float
    edges: Tuple[WeightedEdge, ...]

    @classmethod
    def from_tree(cls, result: TreeResult) -> "GraphOutput":
        return cls(
            algorithm=result.algorithm,
            lam=result.lam,
            n=result.n_vertices,
            total_weight=result.total_weight,
            entropy=result.entropy,
            objective=result.objective,
            edges=tuple(sorted(result.edges, key=lambda e: e.key)),
        )

    @classmethod
    def from_edge_keys(
        cls, point_set: PointSet, edge_keys: List[EdgeKey], algorithm: GraphAlgorithm, lam: float
    ) -> "GraphOutput":
        """Score an arbitrary edge set (e.g. a triangulation) against the point set."""
        distances = distance_matrix(point_set)
        edges = tuple(WeightedEdge(u, v, float(distances[u, v])) for u, v in sorted(edge_keys))
        total_weight = math.fsum(edge.w for edge in edges)
        entropy = graph_entropy(len(point_set), (edge.key for edge in edges))
        return cls(
            algorithm=algorithm,
            lam=lam,
            n=len(point_set),
            total_weight=total_weight,
            entropy=entropy,
            objective=objective_cost(total_weight, entropy, lam),
            edges=edges,
        )

    @classmethod
    def from_triangulation(cls, point_set: PointSet, triangulation: Triangulation, lam: float) -> "GraphOutput":
        return cls.from_edge_keys(point_set, list(triangulation.edges), GraphAlgorithm.DELAUNAY, lam)

    def write(self, stream: IO[str]) -> None:
        stream.write(f"# algorithm {self.algorithm.value}\n")
        stream.write(f"# lambda {self.lam:.17g}\n")
        stream.write(f"# n {self.n}\n")
        stream.write(f"# total_weight {self.total_weight:.17g}\n")
        stream.write(f"# entropy {self.entropy:.17g}\n")
        stream.write(f"# objective {self.objective:.17g}\n")
        for edge in self.edges:
            stream.write(f"{edge.u} {edge.v} {edge.w:.17g}\n")


def load_graph_output(stream: IO[str]) -> GraphOutput:
    """Parse a graph written by GraphOutput.write."""
    header: Dict[str, str] = {}
    edges = []
    for line_number, line in enumerate(stream.read().splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            parts = stripped[1:].split()
            if len(parts) == 2 and parts[0] in HEADER_KEYS:
                header[parts[0]] = parts[1]
            continue
        tokens = stripped.split()
        if len(tokens) != 3:
            raise PointSetParseError(line_number, f"expected 'u v w', found {len(tokens)} fields")
        try:
            edges.append(WeightedEdge(int(tokens[0]), int(tokens[1]), float(tokens[2])))
        except ValueError as e:
            raise PointSetParseError(line_number, str(e)) from e

    missing = [key for key in HEADER_KEYS if key not in header]
    if missing:
        raise PointSetParseError(0, f"missing header fields {missing}")
    return GraphOutput(
        algorithm=GraphAlgorithm(header["algorithm"]),
        lam=float(header["lambda"]),
        n=int(header["n"]),
        total_weight=float(header["total_weight"]),
        entropy=float(header["entropy"]),
        objective=float(header["objective"]),
        edges=tuple(edges),
    )
