import itertools
import logging
import math
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from heapq import heapify, heappop, heappush
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from graph.errors import InternalInvariantError, InvalidParameterError
from graph.forest import DegreeHistogram, SpanningForest, objective_cost, shannon_entropy
from graph.models import EdgeKey, PointSet, WeightedEdge
from services.pointset_service import distance_matrix, pairwise_distances

logger = logging.getLogger(__name__)

EXACT_MAX_POINTS = 9


class GraphAlgorithm(str, Enum):
    """Graph constructions known to the solvers, the experiments and the CLI."""

    GREEDY_MSTME = "greedy_mstme"
    KRUSKAL = "kruskal"
    EXACT_ORACLE = "exact_oracle"
    DELAUNAY = "delaunay"


@dataclass(frozen=True)
class SolverConfig:
    """Solver settings: the entropy weight lambda and entropy conventions."""

    lam: float = 0.5
    isolated_vertices_in_entropy: bool = True
    check_mode: bool = False

    def __post_init__(self):
        if not math.isfinite(self.lam) or self.lam < 0:
            raise InvalidParameterError(f"lambda must be finite and >= 0, got {self.lam}")


@dataclass(frozen=True)
class TreeResult:
    """A spanning tree with its weight, degree entropy and objective value."""

    edges: Tuple[WeightedEdge, ...]
    total_weight: float
    entropy: float
    objective: float
    algorithm: GraphAlgorithm
    lam: float

    @property
    def edge_keys(self) -> FrozenSet[EdgeKey]:
        return frozenset(edge.key for edge in self.edges)

    @property
    def n_vertices(self) -> int:
        return len(self.edges) + 1

    def degrees(self) -> List[int]:
        degrees = [0] * self.n_vertices
        for edge in self.edges:
            degrees[edge.u] += 1
            degrees[edge.v] += 1
        return degrees


def tree_weight(weights: Iterable[float]) -> float:
    """Correctly rounded sum, so equal weight multisets give equal totals."""
    return math.fsum(weights)


def make_tree_result(
    n_vertices: int, edges: Iterable[WeightedEdge], lam: float, algorithm: GraphAlgorithm
) -> TreeResult:
    """Score a finished tree; every solver builds its result through here."""
    ordered = tuple(sorted(edges, key=lambda e: e.key))
    degrees = [0] * n_vertices
    for edge in ordered:
        degrees[edge.u] += 1
        degrees[edge.v] += 1
    total_weight = tree_weight(edge.w for edge in ordered)
    entropy = shannon_entropy(DegreeHistogram.from_degrees(degrees))
    return TreeResult(
        edges=ordered,
        total_weight=total_weight,
        entropy=entropy,
        objective=objective_cost(total_weight, entropy, lam),
        algorithm=algorithm,
        lam=lam,
    )


class ISolver(ABC):
    """Interface for spanning tree solvers."""

    algorithm: GraphAlgorithm

    @abstractmethod
    def solve(self, point_set: PointSet, config: SolverConfig) -> TreeResult:
        """Build a spanning tree over the point set."""
        pass


def degree_pair(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def max_joined_entropy(histogram: DegreeHistogram, include_isolated: bool) -> float:
    """Largest entropy reachable by joining two vertices of the histogram with one edge."""
    present = sorted(histogram.counts)
    best = 0.0
    for i, low in enumerate(present):
        for high in present[i:]:
            if low == high and histogram.count(low) < 2:
                continue
            joined = histogram.copy()
            joined.move(low, low + 1)
            joined.move(high, high + 1)
            best = max(best, shannon_entropy(joined, include_isolated))
    return best


class GreedyMSTMESolver(ISolver):
    """Capacity-increasing greedy heuristic for the minimum spanning tree with maximum entropy."""

    algorithm = GraphAlgorithm.GREEDY_MSTME

    def solve(self, point_set: PointSet, config: SolverConfig) -> TreeResult:
        """
        Grow a spanning tree one edge per round.

        Each round scans the edges not yet in the forest in (w, u, v) order,
        skips those that would close a cycle, tentatively adds each survivor,
        scores it as w - lambda * H(forest + e) and removes it again. The
        strictly best score is committed, so the first-scanned edge wins ties.

        Within a round H(forest + e) depends only on the degrees of e's
        endpoints, so the tentative add/remove runs once per degree pair and
        the entropy is reused for later edges with the same pair. The scan
        stops once w - lambda * max(H) can no longer beat the best score.
        check_mode turns both shortcuts off and validates the forest after
        every tentative step.

        Args:
            point_set: At least 2 points
            config: Lambda and entropy conventions

        Returns:
            TreeResult with n - 1 edges
        """
        point_set.require_size(2)
        n = len(point_set)
        lam = config.lam
        include_isolated = config.isolated_vertices_in_entropy
        check_mode = config.check_mode
        edges = pairwise_distances(point_set)
        forest = SpanningForest(n)
        # Edges in the forest or known to close a cycle; components only merge, so a cycle stays a cycle.
        retired = [False] * len(edges)
        first_open = 0

        logger.info(f"Greedy MSTME on {n} points ({len(edges)} edges, lambda={lam})")
        for round_index in range(n - 1):
            while retired[first_open]:
                first_open += 1
            bound = lam * max_joined_entropy(forest.histogram, include_isolated)
            scored: Dict[Tuple[int, int], float] = {}
            best_cost = math.inf
            best_index: Optional[int] = None

            for index in range(first_open, len(edges)):
                if retired[index]:
                    continue
                edge = edges[index]
                # Later edges are no lighter, so none of them can score strictly better.
                if not check_mode and edge.w - bound >= best_cost:
                    break
                if forest.would_cycle(edge):
                    retired[index] = True
                    continue
                pair = degree_pair(forest.degree(edge.u), forest.degree(edge.v))
                entropy = None if check_mode else scored.get(pair)
                if entropy is None:
                    entropy = self._tentative_entropy(forest, edge, include_isolated, check_mode)
                    scored[pair] = entropy
                ecost = edge.w - lam * entropy
                if ecost < best_cost:
                    best_cost = ecost
                    best_index = index

            if best_index is None:
                raise InternalInvariantError(
                    f"Round {round_index}: every remaining edge closes a cycle with {forest.edge_count} edges placed"
                )
            forest.add_edge(edges[best_index])
            retired[best_index] = True
            logger.debug(f"Round {round_index}: committed {edges[best_index].key} with cost {best_cost:.6f}")

        if forest.component_count != 1:
            raise InternalInvariantError(f"Greedy result has {forest.component_count} components")
        result = make_tree_result(n, forest.edges, lam, self.algorithm)
        logger.info(
            f"Greedy MSTME done: weight={result.total_weight:.6f} entropy={result.entropy:.6f} "
            f"objective={result.objective:.6f}"
        )
        return result

    @staticmethod
    def _tentative_entropy(
        forest: SpanningForest, edge: WeightedEdge, include_isolated: bool, check_mode: bool
    ) -> float:
        forest.add_edge(edge)
        if check_mode:
            forest.check_consistency()
        entropy = forest.entropy(include_isolated)
        forest.remove_edge(edge)
        if check_mode:
            forest.check_consistency()
        return entropy


class KruskalSolver(ISolver):
    """Minimum-weight spanning tree by sorted-edge greedy with union-find."""

    algorithm = GraphAlgorithm.KRUSKAL

    def solve(self, point_set: PointSet, config: SolverConfig) -> TreeResult:
        point_set.require_size(2)
        n = len(point_set)
        forest = SpanningForest(n)
        for edge in pairwise_distances(point_set):
            if not forest.would_cycle(edge):
                forest.add_edge(edge)
                if forest.is_tree():
                    break
        result = make_tree_result(n, forest.edges, config.lam, self.algorithm)
        logger.info(f"Kruskal MST on {n} points: weight={result.total_weight:.6f} entropy={result.entropy:.6f}")
        return result


def prufer_to_edges(sequence: Sequence[int], n: int) -> List[EdgeKey]:
    """Decode a Prüfer sequence of length n - 2 over 0..n-1 into canonical tree edges."""
    degree = [1] * n
    for vertex in sequence:
        degree[vertex] += 1
    leaves = [vertex for vertex in range(n) if degree[vertex] == 1]
    heapify(leaves)

    edges: List[EdgeKey] = []
    for vertex in sequence:
        leaf = heappop(leaves)
        edges.append((leaf, vertex) if leaf < vertex else (vertex, leaf))
        degree[vertex] -= 1
        if degree[vertex] == 1:
            heappush(leaves, vertex)
    u, v = heappop(leaves), heappop(leaves)
    edges.append((u, v) if u < v else (v, u))
    return edges


class ExactMSTMESolver(ISolver):
    """Brute-force optimum over all n^(n-2) labeled spanning trees (small n only)."""

    algorithm = GraphAlgorithm.EXACT_ORACLE

    def solve(self, point_set: PointSet, config: SolverConfig) -> TreeResult:
        n = len(point_set)
        if not 2 <= n <= EXACT_MAX_POINTS:
            raise InvalidParameterError(f"Exact MSTME supports 2..{EXACT_MAX_POINTS} points, got {n}")
        lam = config.lam
        weights = distance_matrix(point_set).tolist()
        entropy_by_degrees: Dict[Tuple[int, ...], float] = {}

        best_objective = math.inf
        best_edges: Optional[List[EdgeKey]] = None
        enumerated = 0
        for sequence in itertools.product(range(n), repeat=n - 2):
            enumerated += 1
            # Degree of a vertex is one more than its occurrences in the sequence.
            degree_counts = tuple(sorted(Counter(sequence).values()))
            entropy = entropy_by_degrees.get(degree_counts)
            if entropy is None:
                degrees = [1] * n
                for vertex in sequence:
                    degrees[vertex] += 1
                entropy = shannon_entropy(DegreeHistogram.from_degrees(degrees))
                entropy_by_degrees[degree_counts] = entropy

            edges = sorted(prufer_to_edges(sequence, n))
            objective = objective_cost(tree_weight(weights[u][v] for u, v in edges), entropy, lam)
            if objective < best_objective or (objective == best_objective and edges < best_edges):
                best_objective = objective
                best_edges = edges

        logger.info(f"Exact MSTME enumerated {enumerated} trees on {n} points; best objective {best_objective:.6f}")
        result = make_tree_result(n, (WeightedEdge(u, v, weights[u][v]) for u, v in best_edges), lam, self.algorithm)
        if result.objective != best_objective:
            raise InternalInvariantError(f"Exact objective {result.objective} != enumerated {best_objective}")
        return result


_SOLVERS: Dict[GraphAlgorithm, ISolver] = {
    GraphAlgorithm.GREEDY_MSTME: GreedyMSTMESolver(),
    GraphAlgorithm.KRUSKAL: KruskalSolver(),
    GraphAlgorithm.EXACT_ORACLE: ExactMSTMESolver(),
}


def get_solver(algorithm: GraphAlgorithm) -> ISolver:
    try:
        return _SOLVERS[GraphAlgorithm(algorithm)]
    except (KeyError, ValueError):
        raise InvalidParameterError(f"No spanning tree solver for {algorithm!r}")


def solve(point_set: PointSet, algorithm: GraphAlgorithm, config: SolverConfig) -> TreeResult:
    return get_solver(algorithm).solve(point_set, config)


def greedy_mstme(point_set: PointSet, config: SolverConfig) -> TreeResult:
    return GreedyMSTMESolver().solve(point_set, config)


def kruskal_mst(point_set: PointSet, config: Optional[SolverConfig] = None) -> TreeResult:
    """Minimum spanning tree; the objective is scored under config.lam (0 when omitted)."""
    return KruskalSolver().solve(point_set, config or SolverConfig(lam=0.0))


def exact_mstme(point_set: PointSet, config: SolverConfig) -> TreeResult:
    return ExactMSTMESolver().solve(point_set, config)
