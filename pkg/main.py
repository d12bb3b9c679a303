"""
MSTME data graphs - command-line entry point.

Builds minimum-weight spanning trees with a degree-entropy bonus, the
Kruskal and Delaunay baselines, and the noise-stability experiments
comparing them.
"""

import sys
from typing import List, Optional

from config import AppConfig
from config.logging_config import get_logger, setup_logging
from handlers import CLIArgumentParser, ExitCode, GraphHandler, OracleHandler, PointSetHandler, StabilityHandler
from services import BowyerWatsonTriangulator

logger = get_logger(__name__)


class MSTMEApp:
    """Wires services into command handlers and dispatches subcommands."""

    def __init__(self, config: AppConfig):
        """
        Initialize the application with configuration and services.

        Args:
            config: Application configuration object
        """
        self.config = config
        logger.info("Initializing MSTMEApp")

        self.triangulator = BowyerWatsonTriangulator()

        self.graph_handler = GraphHandler(self.triangulator, config)
        self.stability_handler = StabilityHandler(config)
        self.oracle_handler = OracleHandler(config)
        self.pointset_handler = PointSetHandler()

        self.parser = self._build_parser()
        logger.info("MSTMEApp setup complete")

    def _build_parser(self) -> CLIArgumentParser:
        parser = CLIArgumentParser(
            prog="mstme",
            description="Spanning-tree data graphs with a degree-entropy bonus",
        )
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=CLIArgumentParser)
        subparsers.required = True

        self.graph_handler.register_commands(subparsers)
        self.stability_handler.register_commands(subparsers)
        self.oracle_handler.register_commands(subparsers)
        self.pointset_handler.register_commands(subparsers)
        return parser

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Parse `argv` and run the selected command, returning its exit code."""
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            # argparse exits 0 on --help and ExitCode.USAGE on bad flags
            return int(e.code or 0)

        logger.debug(f"Running command: {args.command}")
        try:
            return args.handler(args)
        except KeyboardInterrupt:
            logger.info("Interrupted by user")
            return ExitCode.INTERNAL
        except Exception as e:
            logger.critical(f"Unhandled error in {args.command}: {e}", exc_info=True)
            print(f"internal error: {e}", file=sys.stderr)
            return ExitCode.INTERNAL


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the application."""
    try:
        config = AppConfig.from_env()
    except ValueError as e:
        setup_logging(log_dir=None)
        logger.error(f"Configuration error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.USAGE

    setup_logging(config.log_level, config.log_dir)
    logger.debug("Starting MSTME application")

    app = MSTMEApp(config)
    return app.run(argv)


if __name__ == "__main__":
    sys.exit(main())
