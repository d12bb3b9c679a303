import csv
import json
import logging
import math
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import IO, Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from graph.errors import (
    DegenerateGeometryError,
    InsufficientPointsError,
    InvalidParameterError,
    PointSetError,
    StabilityError,
)
from graph.forest import graph_entropy, objective_cost
from graph.models import EdgeKey, PointSet
from services.delaunay_service import delaunay_triangulate
from services.pointset_service import distance_matrix, min_pairwise_distance
from services.solver_service import GraphAlgorithm, SolverConfig, greedy_mstme, kruskal_mst

logger = logging.getLogger(__name__)

STABILITY_ALGORITHMS = (GraphAlgorithm.GREEDY_MSTME, GraphAlgorithm.DELAUNAY, GraphAlgorithm.KRUSKAL)


@dataclass(frozen=True)
class NoiseSpec:
    """Perturbation protocol settings; the level r is given per run."""

    trials: int = 30
    seed: int = 0
    disk_uniform: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidParameterError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise InvalidParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class LevelStats:
    """Stability distribution and boxplot summary for one noise level."""

    r: int
    per_trial: Tuple[float, ...]
    intersection: Optional[float]
    median: Optional[float]
    q1: Optional[float]
    q3: Optional[float]
    min: Optional[float]
    max: Optional[float]
    failed_trials: int

    @property
    def succeeded_trials(self) -> int:
        return len(self.per_trial)


@dataclass(frozen=True)
class StabilityReport:
    """Per-level edge stability of one graph construction under noise."""

    algorithm: GraphAlgorithm
    lam: float
    seed: int
    epsilon: float
    trials: int
    levels: Tuple[LevelStats, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algorithm": self.algorithm.value,
            "lambda": self.lam,
            "seed": self.seed,
            "epsilon": self.epsilon,
            "trials": self.trials,
            "levels": [{**asdict(level), "per_trial": list(level.per_trial)} for level in self.levels],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "StabilityReport":
        return cls(
            algorithm=GraphAlgorithm(data["algorithm"]),
            lam=data["lambda"],
            seed=data["seed"],
            epsilon=data["epsilon"],
            trials=data["trials"],
            levels=tuple(LevelStats(**{**level, "per_trial": tuple(level["per_trial"])}) for level in data["levels"]),
        )

    def write_csv(self, stream: IO[str]) -> None:
        """Boxplot-ready rows: level, trial, stability."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["level", "trial", "stability"])
        for level in self.levels:
            for trial, stability in enumerate(level.per_trial):
                writer.writerow([level.r, trial, repr(stability)])


def perturb(
    point_set: PointSet, r: float, epsilon: float, rng: np.random.Generator, disk_uniform: bool = False
) -> PointSet:
    """
    Displace every point by a random length and angle.

    The angle is uniform on [0, 2*pi) and the length uniform on [0, r * epsilon]
    (or r * epsilon * sqrt(u), uniform over the disk, when `disk_uniform`).
    Point indices are preserved; r = 0 returns the input unchanged.
    """
    if r < 0:
        raise InvalidParameterError(f"noise level must be >= 0, got {r}")
    if not epsilon > 0:
        raise InvalidParameterError(f"epsilon must be > 0, got {epsilon}")
    if r == 0:
        return point_set

    n = len(point_set)
    radius = r * epsilon
    angles = rng.uniform(0.0, 2 * math.pi, size=n)
    if disk_uniform:
        lengths = radius * np.sqrt(rng.uniform(0.0, 1.0, size=n))
    else:
        lengths = rng.uniform(0.0, radius, size=n)
    offsets = np.column_stack((lengths * np.cos(angles), lengths * np.sin(angles)))
    return PointSet.from_coordinates(point_set.as_array() + offsets)


def edge_stability(
    baseline: Iterable[EdgeKey], trial_graphs: Sequence[Iterable[EdgeKey]]
) -> Tuple[List[float], float]:
    """
    Fraction of baseline edges that reappear in each trial, and in all trials at once.

    Edges are compared by their canonical index pairs only.

    Returns:
        (per-trial fractions, fraction of baseline edges present in every trial)
    """
    base: FrozenSet[EdgeKey] = frozenset(baseline)
    if not base:
        raise StabilityError("Baseline graph has no edges")
    size = len(base)

    per_trial = []
    common = set(base)
    for trial in trial_graphs:
        kept = base.intersection(trial)
        per_trial.append(len(kept) / size)
        common.intersection_update(kept)
    return per_trial, len(common) / size


def boxplot_summary(values: Sequence[float]) -> Dict[str, float]:
    """Median, quartiles (linear interpolation between closest ranks), min and max."""
    data = np.asarray(values, dtype=np.float64)
    q1, median, q3 = np.quantile(data, [0.25, 0.5, 0.75], method="linear")
    return {
        "median": float(median),
        "q1": float(q1),
        "q3": float(q3),
        "min": float(data.min()),
        "max": float(data.max()),
    }


def build_edge_set(point_set: PointSet, algorithm: GraphAlgorithm, config: SolverConfig) -> FrozenSet[EdgeKey]:
    """Edge keys of the graph built by `algorithm` on the point set."""
    algorithm = GraphAlgorithm(algorithm)
    if algorithm is GraphAlgorithm.GREEDY_MSTME:
        return greedy_mstme(point_set, config).edge_keys
    if algorithm is GraphAlgorithm.KRUSKAL:
        return kruskal_mst(point_set, config).edge_keys
    if algorithm is GraphAlgorithm.DELAUNAY:
        return frozenset(delaunay_triangulate(point_set).edges)
    raise InvalidParameterError(f"{algorithm.value} is not a stability experiment algorithm")


def trial_rng(seed: int, r: int, trial: int) -> np.random.Generator:
    """Independent PCG64 stream for one (seed, level, trial) triple."""
    return np.random.default_rng(np.random.SeedSequence([seed, r, trial]))


def _run_trial(
    point_set: PointSet,
    algorithm: GraphAlgorithm,
    config: SolverConfig,
    noise: NoiseSpec,
    epsilon: float,
    r: int,
    trial: int,
) -> Optional[FrozenSet[EdgeKey]]:
    """Build the graph on one perturbed copy; None when the perturbed input is degenerate."""
    rng = trial_rng(noise.seed, r, trial)
    try:
        perturbed = perturb(point_set, r, epsilon, rng, noise.disk_uniform)
        return build_edge_set(perturbed, algorithm, config)
    except (DegenerateGeometryError, PointSetError) as e:
        logger.warning(f"Trial {trial} at level {r} failed and is excluded: {e}")
        return None


def _run_trial_packed(args: Tuple) -> Optional[FrozenSet[EdgeKey]]:
    return _run_trial(*args)


class IStabilityExperimentService(ABC):
    """Interface for the noise stability experiment."""

    @abstractmethod
    def run(
        self,
        point_set: PointSet,
        algorithm: GraphAlgorithm,
        config: SolverConfig,
        noise: NoiseSpec,
        levels: Sequence[int],
    ) -> StabilityReport:
        """Run the experiment over the given noise levels."""
        pass


class StabilityExperimentService(IStabilityExperimentService):
    """Runs perturbation trials per noise level and aggregates edge stability."""

    def __init__(self, workers: int = 1):
        """
        Initialize the experiment service.

        Args:
            workers: Number of worker processes for trials (1 runs in-process)
        """
        if workers < 1:
            raise InvalidParameterError(f"workers must be >= 1, got {workers}")
        self._workers = workers
        logger.info(f"StabilityExperimentService initialized with {workers} worker(s)")

    def run(
        self,
        point_set: PointSet,
        algorithm: GraphAlgorithm,
        config: SolverConfig,
        noise: NoiseSpec,
        levels: Sequence[int],
    ) -> StabilityReport:
        algorithm = GraphAlgorithm(algorithm)
        if algorithm not in STABILITY_ALGORITHMS:
            raise InvalidParameterError(f"{algorithm.value} is not a stability experiment algorithm")
        if not levels:
            raise InvalidParameterError("At least one noise level is required")
        if any(r < 0 for r in levels):
            raise InvalidParameterError(f"Noise levels must be >= 0, got {list(levels)}")

        epsilon = min_pairwise_distance(point_set)
        baseline = build_edge_set(point_set, algorithm, config)
        logger.info(
            f"Stability experiment: {algorithm.value}, n={len(point_set)}, epsilon={epsilon:.6g}, "
            f"baseline edges={len(baseline)}, levels={list(levels)}, trials={noise.trials}"
        )

        tasks = [
            (point_set, algorithm, config, noise, epsilon, r, trial) for r in levels for trial in range(noise.trials)
        ]
        if self._workers > 1:
            with ProcessPoolExecutor(max_workers=self._workers) as pool:
                outcomes = list(pool.map(_run_trial_packed, tasks))
        else:
            outcomes = [_run_trial_packed(task) for task in tasks]

        stats = []
        for position, r in enumerate(levels):
            level_outcomes = outcomes[position * noise.trials : (position + 1) * noise.trials]
            graphs = [graph for graph in level_outcomes if graph is not None]
            stats.append(self._level_stats(r, baseline, graphs, noise.trials - len(graphs)))
            summary = stats[-1]
            logger.info(
                f"Level {r}: median={summary.median} intersection={summary.intersection} "
                f"failed={summary.failed_trials}"
            )

        return StabilityReport(
            algorithm=algorithm,
            lam=config.lam,
            seed=noise.seed,
            epsilon=epsilon,
            trials=noise.trials,
            levels=tuple(stats),
        )

    @staticmethod
    def _level_stats(
        r: int, baseline: FrozenSet[EdgeKey], graphs: List[FrozenSet[EdgeKey]], failed: int
    ) -> LevelStats:
        if not graphs:
            return LevelStats(r, (), None, None, None, None, None, None, failed)
        per_trial, intersection = edge_stability(baseline, graphs)
        summary = boxplot_summary(per_trial)
        return LevelStats(
            r=r,
            per_trial=tuple(per_trial),
            intersection=intersection,
            median=summary["median"],
            q1=summary["q1"],
            q3=summary["q3"],
            min=summary["min"],
            max=summary["max"],
            failed_trials=failed,
        )


def run_stability_experiment(
    point_set: PointSet,
    algorithm: GraphAlgorithm,
    config: SolverConfig,
    noise: NoiseSpec,
    levels: Sequence[int],
    workers: int = 1,
) -> StabilityReport:
    return StabilityExperimentService(workers).run(point_set, algorithm, config, noise, levels)


@dataclass(frozen=True)
class ComparisonRow:
    """Weight, degree entropy and objective of one construction at one lambda."""

    algorithm: GraphAlgorithm
    lam: float
    n_edges: int
    total_weight: float
    entropy: float
    objective: float


def compare_graphs(point_set: PointSet, lambdas: Sequence[float]) -> List[ComparisonRow]:
    """
    Score the greedy MSTME tree, the MST and the Delaunay triangulation at each lambda.

    The MST and the triangulation do not depend on lambda; they are rescored.
    Delaunay is skipped for collinear input.
    """
    n = len(point_set)
    distances = distance_matrix(point_set)
    mst = kruskal_mst(point_set)
    try:
        delaunay_edges = delaunay_triangulate(point_set).edges
    except (DegenerateGeometryError, InsufficientPointsError) as e:
        logger.warning(f"Skipping Delaunay in comparison: {e}")
        delaunay_edges = None

    rows = []
    for lam in lambdas:
        tree = greedy_mstme(point_set, SolverConfig(lam=lam))
        rows.append(
            ComparisonRow(
                GraphAlgorithm.GREEDY_MSTME, lam, len(tree.edges), tree.total_weight, tree.entropy, tree.objective
            )
        )
        rows.append(
            ComparisonRow(
                GraphAlgorithm.KRUSKAL,
                lam,
                len(mst.edges),
                mst.total_weight,
                mst.entropy,
                objective_cost(mst.total_weight, mst.entropy, lam),
            )
        )
        if delaunay_edges is not None:
            weight = math.fsum(float(distances[u, v]) for u, v in delaunay_edges)
            entropy = graph_entropy(n, delaunay_edges)
            objective = objective_cost(weight, entropy, lam)
            rows.append(
                ComparisonRow(GraphAlgorithm.DELAUNAY, lam, len(delaunay_edges), weight, entropy, objective)
            )
    return rows
