"""Handlers module for command-line subcommands."""

from .common import CLIArgumentParser, ExitCode
from .graph_handler import GraphHandler
from .oracle_handler import OracleHandler
from .pointset_handler import PointSetHandler
from .stability_handler import StabilityHandler

__all__ = [
    "CLIArgumentParser",
    "ExitCode",
    "GraphHandler",
    "StabilityHandler",
    "OracleHandler",
    "PointSetHandler",
]
