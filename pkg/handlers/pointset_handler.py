import argparse
import logging
import sys

from handlers.common import ExitCode, positive_int, run_guarded, seed_flag
from services.pointset_service import (
    SILHOUETTE_MIN_POINTS,
    SilhouetteShape,
    generate_silhouette,
    save_pointset_file,
    serialize_pointset,
)

logger = logging.getLogger(__name__)


def silhouette_size(value: str) -> int:
    number = positive_int(value)
    if number < SILHOUETTE_MIN_POINTS:
        raise argparse.ArgumentTypeError(f"expected at least {SILHOUETTE_MIN_POINTS} points, got {number}")
    return number


class PointSetHandler:
    """Handles the `generate` command for synthetic silhouettes."""

    def __init__(self):
        logger.info("PointSetHandler initialized")

    def register_commands(self, subparsers: argparse._SubParsersAction):
        parser = subparsers.add_parser("generate", help="Write a synthetic silhouette point file")
        parser.add_argument("--shape", choices=[s.value for s in SilhouetteShape], default=SilhouetteShape.RING.value)
        parser.add_argument("--n", type=silhouette_size, default=60)
        parser.add_argument("--seed", type=seed_flag, default=0)
        parser.add_argument("--out", help="Point file path (stdout when omitted)")
        parser.set_defaults(handler=lambda args: run_guarded("generate", self._handle_generate, args))

    def _handle_generate(self, args: argparse.Namespace) -> int:
        point_set = generate_silhouette(args.shape, args.n, args.seed)
        if args.out:
            save_pointset_file(point_set, args.out)
        else:
            serialize_pointset(point_set, sys.stdout)
        return ExitCode.SUCCESS
