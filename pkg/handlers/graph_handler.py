import argparse
import logging
import sys

from config import AppConfig
from handlers.common import ALGORITHM_FLAGS, ExitCode, bool_flag, nonnegative_float, parse_lambdas, run_guarded
from services.delaunay_service import ITriangulator
from services.experiment_service import compare_graphs
from services.graph_output_service import GraphOutput
from services.pointset_service import load_pointset_file
from services.solver_service import GraphAlgorithm, SolverConfig, get_solver

logger = logging.getLogger(__name__)


class GraphHandler:
    """Handles the `build` and `compare` commands."""

    def __init__(self, triangulator: ITriangulator, config: AppConfig):
        """
        Initialize graph handler.

        Args:
            triangulator: Triangulation service for the Delaunay baseline
            config: Application defaults for lambda and entropy convention
        """
        self._triangulator = triangulator
        self._config = config
        logger.info("GraphHandler initialized")

    def register_commands(self, subparsers: argparse._SubParsersAction):
        """Register graph construction commands."""
        build = subparsers.add_parser("build", help="Build a data graph from a point file")
        build.add_argument("input", help="Point file ('x y' per line)")
        build.add_argument("--algorithm", choices=sorted(ALGORITHM_FLAGS), default="mstme")
        build.add_argument("--lambda", dest="lam", type=nonnegative_float, default=self._config.default_lambda)
        build.add_argument(
            "--isolated-in-entropy",
            dest="isolated_in_entropy",
            type=bool_flag,
            default=self._config.isolated_vertices_in_entropy,
            metavar="{true|false}",
        )
        build.add_argument("--out", help="Output edge list (stdout when omitted)")
        build.set_defaults(handler=lambda args: run_guarded("build", self._handle_build, args))

        compare = subparsers.add_parser("compare", help="Compare weight and degree entropy of all constructions")
        compare.add_argument("input", help="Point file ('x y' per line)")
        compare.add_argument("--lambdas", type=parse_lambdas, default=[0.0, 0.5, 1.0], help="e.g. 0,0.5,1")
        compare.set_defaults(handler=lambda args: run_guarded("compare", self._handle_compare, args))

    def _handle_build(self, args: argparse.Namespace) -> int:
        """Build one graph and write it as an edge list."""
        point_set = load_pointset_file(args.input)
        algorithm = ALGORITHM_FLAGS[args.algorithm]
        logger.info(f"build: {algorithm.value} on {args.input} (lambda={args.lam})")

        if algorithm is GraphAlgorithm.DELAUNAY:
            triangulation = self._triangulator.triangulate(point_set)
            output = GraphOutput.from_triangulation(point_set, triangulation, args.lam)
        else:
            solver_config = SolverConfig(lam=args.lam, isolated_vertices_in_entropy=args.isolated_in_entropy)
            output = GraphOutput.from_tree(get_solver(algorithm).solve(point_set, solver_config))

        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as stream:
                output.write(stream)
            logger.info(f"Wrote {len(output.edges)} edges to {args.out}")
        else:
            output.write(sys.stdout)
        return ExitCode.SUCCESS

    def _handle_compare(self, args: argparse.Namespace) -> int:
        """Print weight, entropy and objective of each construction per lambda."""
        point_set = load_pointset_file(args.input)
        print(f"{'algorithm':<13} {'lambda':>6} {'edges':>6} {'weight':>14} {'entropy':>10} {'objective':>14}")
        for row in compare_graphs(point_set, args.lambdas):
            print(
                f"{row.algorithm.value:<13} {row.lam:>6g} {row.n_edges:>6} {row.total_weight:>14.6f} "
                f"{row.entropy:>10.6f} {row.objective:>14.6f}"
            )
        return ExitCode.SUCCESS
