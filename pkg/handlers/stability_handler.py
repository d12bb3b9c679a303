import argparse
import logging

from config import AppConfig
from handlers.common import (
    ALGORITHM_FLAGS,
    ExitCode,
    bool_flag,
    nonnegative_float,
    parse_levels,
    positive_int,
    run_guarded,
    seed_flag,
)
from services.experiment_service import IStabilityExperimentService, NoiseSpec, StabilityExperimentService
from services.pointset_service import load_pointset_file
from services.solver_service import SolverConfig

logger = logging.getLogger(__name__)


class StabilityHandler:
    """Handles the `stability` noise experiment command."""

    def __init__(self, config: AppConfig):
        self._config = config
        logger.info("StabilityHandler initialized")

    def register_commands(self, subparsers: argparse._SubParsersAction):
        """Register the stability experiment command."""
        parser = subparsers.add_parser("stability", help="Measure edge stability under point perturbation")
        parser.add_argument("input", help="Point file ('x y' per line)")
        parser.add_argument("--algorithm", choices=sorted(ALGORITHM_FLAGS), default="mstme")
        parser.add_argument("--lambda", dest="lam", type=nonnegative_float, default=self._config.default_lambda)
        parser.add_argument("--levels", type=parse_levels, default=list(range(1, 11)), help="e.g. 1..10")
        parser.add_argument("--trials", type=positive_int, default=self._config.trials)
        parser.add_argument("--seed", type=seed_flag, default=self._config.seed)
        parser.add_argument("--workers", type=positive_int, default=self._config.workers)
        parser.add_argument(
            "--isolated-in-entropy",
            dest="isolated_in_entropy",
            type=bool_flag,
            default=self._config.isolated_vertices_in_entropy,
            metavar="{true|false}",
        )
        parser.add_argument(
            "--disk-uniform-noise",
            dest="disk_uniform_noise",
            type=bool_flag,
            default=self._config.disk_uniform_noise,
            metavar="{true|false}",
        )
        parser.add_argument("--out", help="StabilityReport JSON path")
        parser.add_argument("--out-csv", dest="out_csv", help="Boxplot CSV path (level,trial,stability)")
        parser.set_defaults(handler=lambda args: run_guarded("stability", self._handle_stability, args))

    def _build_service(self, workers: int) -> IStabilityExperimentService:
        return StabilityExperimentService(workers)

    def _handle_stability(self, args: argparse.Namespace) -> int:
        """Run the experiment, write JSON/CSV after aggregation and print per-level summaries."""
        point_set = load_pointset_file(args.input)
        algorithm = ALGORITHM_FLAGS[args.algorithm]
        solver_config = SolverConfig(lam=args.lam, isolated_vertices_in_entropy=args.isolated_in_entropy)
        noise = NoiseSpec(trials=args.trials, seed=args.seed, disk_uniform=args.disk_uniform_noise)

        report = self._build_service(args.workers).run(point_set, algorithm, solver_config, noise, args.levels)

        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as stream:
                stream.write(report.to_json())
            logger.info(f"Wrote stability report to {args.out}")
        if args.out_csv:
            with open(args.out_csv, "w", encoding="utf-8", newline="") as stream:
                report.write_csv(stream)
            logger.info(f"Wrote boxplot CSV to {args.out_csv}")

        insufficient = []
        for level in report.levels:
            print(f"r={level.r} median={level.median} intersection={level.intersection}")
            if 2 * level.succeeded_trials < report.trials:
                insufficient.append(level.r)

        if insufficient:
            logger.error(f"Fewer than half of the trials succeeded at levels {insufficient}")
            return ExitCode.DEGENERATE
        return ExitCode.SUCCESS
