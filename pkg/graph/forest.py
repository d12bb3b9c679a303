"""Degree bookkeeping, degree-distribution entropy and the rollback spanning forest.

The greedy solver tentatively adds an edge, scores the resulting forest and
removes the edge again, so every mutation here is undoable in O(1): the
union-find keeps a history of unions, the histogram moves single counts and
the running total weight is kept as a stack.
"""

import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from graph.errors import ContractError, InternalInvariantError, InvalidParameterError
from graph.models import EdgeKey, WeightedEdge


class DegreeHistogram:
    """Map from degree value to the number of vertices having that degree."""

    def __init__(self, n_vertices: int, counts: Optional[Dict[int, int]] = None):
        if n_vertices < 1:
            raise InvalidParameterError(f"Histogram needs at least one vertex, got {n_vertices}")
        self.n_vertices = n_vertices
        self.counts: Dict[int, int] = dict(counts) if counts is not None else {0: n_vertices}

    @classmethod
    def from_degrees(cls, degrees: Sequence[int]) -> "DegreeHistogram":
        """Build a histogram from a per-vertex degree sequence."""
        counts: Dict[int, int] = {}
        for degree in degrees:
            counts[degree] = counts.get(degree, 0) + 1
        return cls(len(degrees), counts)

    def move(self, old_degree: int, new_degree: int) -> None:
        """Move one vertex from `old_degree` to `new_degree`."""
        remaining = self.counts[old_degree] - 1
        if remaining:
            self.counts[old_degree] = remaining
        else:
            del self.counts[old_degree]
        self.counts[new_degree] = self.counts.get(new_degree, 0) + 1

    def count(self, degree: int) -> int:
        return self.counts.get(degree, 0)

    def degree_sum(self) -> int:
        """Sum of degree × count, i.e. twice the number of edges."""
        return sum(degree * count for degree, count in self.counts.items())

    def check(self, n_edges: Optional[int] = None) -> None:
        """Raise InternalInvariantError if the histogram invariants do not hold."""
        if any(count <= 0 for count in self.counts.values()):
            raise InternalInvariantError(f"Histogram holds non-positive counts: {self.counts}")
        if sum(self.counts.values()) != self.n_vertices:
            raise InternalInvariantError(
                f"Histogram counts sum to {sum(self.counts.values())}, expected {self.n_vertices}"
            )
        if n_edges is not None and self.degree_sum() != 2 * n_edges:
            raise InternalInvariantError(f"Degree sum {self.degree_sum()} does not match {n_edges} edges")

    def as_dict(self) -> Dict[int, int]:
        return dict(sorted(self.counts.items()))

    def copy(self) -> "DegreeHistogram":
        return DegreeHistogram(self.n_vertices, self.counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DegreeHistogram):
            return NotImplemented
        return self.n_vertices == other.n_vertices and self.counts == other.counts

    def __repr__(self) -> str:
        return f"<DegreeHistogram(n_vertices={self.n_vertices}, counts={self.as_dict()})>"


def shannon_entropy(histogram: DegreeHistogram, include_isolated: bool = True) -> float:
    """
    Shannon entropy, in bits, of the degree distribution.

    p(v) is the fraction of vertices having degree v. Terms are accumulated in
    descending-count order so that equal histograms always give the same bits.

    Args:
        histogram: Degree histogram over the fixed vertex set
        include_isolated: When False, degree-0 vertices are dropped and p is
            normalized over the remaining vertices

    Returns:
        Entropy in bits; exactly 0.0 when a single degree value occurs
    """
    if include_isolated:
        values = list(histogram.counts.values())
        total = histogram.n_vertices
    else:
        values = [count for degree, count in histogram.counts.items() if degree != 0]
        total = sum(values)
    if total == 0:
        return 0.0

    entropy = 0.0
    for count in sorted(values, reverse=True):
        p = count / total
        entropy -= p * math.log2(p)
    return entropy


def objective_cost(total_weight: float, entropy: float, lam: float) -> float:
    """Bi-criteria objective: total edge weight minus lambda times entropy."""
    if not math.isfinite(lam) or lam < 0:
        raise InvalidParameterError(f"lambda must be finite and >= 0, got {lam}")
    return total_weight - lam * entropy


def degree_histogram(n_vertices: int, edges: Iterable[EdgeKey]) -> DegreeHistogram:
    """Recompute a degree histogram from scratch for an edge set."""
    degrees = [0] * n_vertices
    for u, v in edges:
        degrees[u] += 1
        degrees[v] += 1
    return DegreeHistogram.from_degrees(degrees)


def graph_entropy(n_vertices: int, edges: Iterable[EdgeKey], include_isolated: bool = True) -> float:
    """Degree-distribution entropy of an arbitrary edge set over n vertices."""
    return shannon_entropy(degree_histogram(n_vertices, edges), include_isolated)


class RollbackUnionFind:
    """Disjoint sets with union by rank and O(1) undo of the most recent union.

    No path compression: undo restores only the parent recorded per union.
    """

    def __init__(self, n: int):
        self._parent = list(range(n))
        self._rank = [0] * n
        # (attached root, surviving root, surviving root's previous rank); None for no-op unions
        self._history: List[Optional[Tuple[int, int, int]]] = []
        self._components = n

    def find(self, x: int) -> int:
        parent = self._parent
        while parent[x] != x:
            x = parent[x]
        return x

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; returns False if they were already joined."""
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            self._history.append(None)
            return False
        if self._rank[root_a] < self._rank[root_b]:
            root_a, root_b = root_b, root_a
        self._history.append((root_b, root_a, self._rank[root_a]))
        self._parent[root_b] = root_a
        if self._rank[root_a] == self._rank[root_b]:
            self._rank[root_a] += 1
        self._components -= 1
        return True

    def undo(self) -> None:
        """Revert the most recent union."""
        if not self._history:
            raise ContractError("No union to undo")
        entry = self._history.pop()
        if entry is None:
            return
        child, root, old_rank = entry
        self._parent[child] = child
        self._rank[root] = old_rank
        self._components += 1

    @property
    def component_count(self) -> int:
        return self._components


class SpanningForest:
    """Acyclic edge-induced subgraph over a fixed vertex set.

    Edges are kept as a stack: only the most recently added edge can be removed.
    """

    def __init__(self, n_vertices: int):
        if n_vertices < 2:
            raise InvalidParameterError(f"A spanning forest needs at least 2 vertices, got {n_vertices}")
        self._n = n_vertices
        self._degrees = [0] * n_vertices
        self._histogram = DegreeHistogram(n_vertices)
        self._union_find = RollbackUnionFind(n_vertices)
        self._edges: List[WeightedEdge] = []
        self._keys = set()
        self._weights = [0.0]

    @property
    def n_vertices(self) -> int:
        return self._n

    @property
    def edges(self) -> Tuple[WeightedEdge, ...]:
        return tuple(self._edges)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def total_weight(self) -> float:
        return self._weights[-1]

    @property
    def histogram(self) -> DegreeHistogram:
        return self._histogram.copy()

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(self._degrees)

    def degree(self, vertex: int) -> int:
        return self._degrees[vertex]

    @property
    def component_count(self) -> int:
        return self._union_find.component_count

    def contains(self, edge: WeightedEdge) -> bool:
        return edge.key in self._keys

    def is_tree(self) -> bool:
        return len(self._edges) == self._n - 1

    def entropy(self, include_isolated: bool = True) -> float:
        return shannon_entropy(self._histogram, include_isolated)

    def would_cycle(self, edge: WeightedEdge) -> bool:
        """True iff the endpoints of `edge` are already in the same component."""
        self._check_endpoints(edge)
        return self._union_find.connected(edge.u, edge.v)

    def add_edge(self, edge: WeightedEdge) -> None:
        self._check_endpoints(edge)
        if edge.key in self._keys:
            raise ContractError(f"Edge {edge.key} is already in the forest")
        if not self._union_find.union(edge.u, edge.v):
            self._union_find.undo()
            raise ContractError(f"Edge {edge.key} would close a cycle")
        for vertex in (edge.u, edge.v):
            old = self._degrees[vertex]
            self._degrees[vertex] = old + 1
            self._histogram.move(old, old + 1)
        self._edges.append(edge)
        self._keys.add(edge.key)
        self._weights.append(self._weights[-1] + edge.w)

    def remove_edge(self, edge: WeightedEdge) -> None:
        if not self._edges or self._edges[-1] != edge:
            raise ContractError(f"Edge {edge.key} is not the most recently added edge")
        self._edges.pop()
        self._keys.discard(edge.key)
        self._union_find.undo()
        for vertex in (edge.u, edge.v):
            old = self._degrees[vertex]
            self._degrees[vertex] = old - 1
            self._histogram.move(old, old - 1)
        self._weights.pop()

    def check_consistency(self) -> None:
        """Compare incremental state with a from-scratch recomputation."""
        expected = degree_histogram(self._n, self._keys)
        if expected != self._histogram:
            raise InternalInvariantError(f"Incremental histogram {self._histogram} != recomputed {expected}")
        self._histogram.check(len(self._edges))

        weight = 0.0
        for edge in self._edges:
            weight += edge.w
        if weight != self.total_weight:
            raise InternalInvariantError(f"Incremental weight {self.total_weight} != recomputed {weight}")

    def _check_endpoints(self, edge: WeightedEdge) -> None:
        if edge.v >= self._n:
            raise ContractError(f"Edge {edge.key} references a vertex outside 0..{self._n - 1}")


def forest_new(n_vertices: int) -> SpanningForest:
    """Empty forest over n isolated vertices."""
    return SpanningForest(n_vertices)


def would_cycle(forest: SpanningForest, edge: WeightedEdge) -> bool:
    return forest.would_cycle(edge)


def add_edge(forest: SpanningForest, edge: WeightedEdge) -> SpanningForest:
    forest.add_edge(edge)
    return forest


def remove_edge(forest: SpanningForest, edge: WeightedEdge) -> SpanningForest:
    forest.remove_edge(edge)
    return forest
