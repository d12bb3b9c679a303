import argparse
import logging
import sys

from config import AppConfig
from handlers.common import ExitCode, nonnegative_float, positive_int, run_guarded, seed_flag
from services.pointset_service import random_pointset
from services.solver_service import EXACT_MAX_POINTS, SolverConfig, exact_mstme, greedy_mstme

logger = logging.getLogger(__name__)

GAP_TOLERANCE = 1e-9


class OracleHandler:
    """Handles the `oracle-check` command comparing greedy MSTME with the exact optimum."""

    def __init__(self, config: AppConfig):
        self._config = config
        logger.info("OracleHandler initialized")

    def register_commands(self, subparsers: argparse._SubParsersAction):
        parser = subparsers.add_parser("oracle-check", help="Compare greedy MSTME against brute force on small sets")
        parser.add_argument("--n", type=positive_int, default=6, help=f"Points per instance (3..{EXACT_MAX_POINTS})")
        parser.add_argument("--instances", type=positive_int, default=20)
        parser.add_argument("--lambda", dest="lam", type=nonnegative_float, default=self._config.default_lambda)
        parser.add_argument("--seed", type=seed_flag, default=self._config.seed)
        parser.set_defaults(handler=lambda args: run_guarded("oracle-check", self._handle_oracle_check, args))

    def _handle_oracle_check(self, args: argparse.Namespace) -> int:
        """Print per-instance gaps (greedy - exact) and their mean and maximum."""
        if not 3 <= args.n <= EXACT_MAX_POINTS:
            print(f"error: --n must be between 3 and {EXACT_MAX_POINTS}, got {args.n}", file=sys.stderr)
            return ExitCode.USAGE

        solver_config = SolverConfig(lam=args.lam)
        gaps = []
        for instance in range(args.instances):
            point_set = random_pointset(args.n, args.seed, instance)
            greedy = greedy_mstme(point_set, solver_config)
            exact = exact_mstme(point_set, solver_config)
            gap = greedy.objective - exact.objective
            gaps.append(gap)
            print(
                f"instance {instance}: greedy={greedy.objective:.12g} exact={exact.objective:.12g} gap={gap:.6e}"
            )

        print(f"mean gap {sum(gaps) / len(gaps):.6e}")
        print(f"max gap {max(gaps):.6e}")

        violations = [index for index, gap in enumerate(gaps) if gap < -GAP_TOLERANCE]
        if violations:
            logger.error(f"Greedy beat the exact oracle on instances {violations}")
            print(f"oracle violated on instances {violations}", file=sys.stderr)
            return ExitCode.INTERNAL
        return ExitCode.SUCCESS
