"""Services module for graph construction and experiments."""

from .delaunay_service import BowyerWatsonTriangulator, ITriangulator, Triangulation, delaunay_triangulate
from .experiment_service import (
    IStabilityExperimentService,
    LevelStats,
    NoiseSpec,
    StabilityExperimentService,
    StabilityReport,
    compare_graphs,
    edge_stability,
    perturb,
    run_stability_experiment,
)
from .graph_output_service import GraphOutput, load_graph_output
from .pointset_service import (
    SilhouetteShape,
    generate_silhouette,
    load_pointset,
    load_pointset_file,
    pairwise_distances,
    random_pointset,
)
from .solver_service import (
    ExactMSTMESolver,
    GraphAlgorithm,
    GreedyMSTMESolver,
    ISolver,
    KruskalSolver,
    SolverConfig,
    TreeResult,
    exact_mstme,
    get_solver,
    greedy_mstme,
    kruskal_mst,
)

__all__ = [
    "BowyerWatsonTriangulator",
    "ITriangulator",
    "Triangulation",
    "delaunay_triangulate",
    "IStabilityExperimentService",
    "LevelStats",
    "NoiseSpec",
    "StabilityExperimentService",
    "StabilityReport",
    "compare_graphs",
    "edge_stability",
    "perturb",
    "run_stability_experiment",
    "GraphOutput",
    "load_graph_output",
    "SilhouetteShape",
    "generate_silhouette",
    "load_pointset",
    "load_pointset_file",
    "pairwise_distances",
    "random_pointset",
    "ExactMSTMESolver",
    "GraphAlgorithm",
    "GreedyMSTMESolver",
    "ISolver",
    "KruskalSolver",
    "SolverConfig",
    "TreeResult",
    "exact_mstme",
    "get_solver",
    "greedy_mstme",
    "kruskal_mst",
]
