"""Shared CLI plumbing: exit codes, flag parsers and error-to-exit-code mapping."""

import argparse
import logging
import sys
from enum import IntEnum
from typing import Callable, List

from config import parse_bool, parse_seed
from graph.errors import (
    ContractError,
    DegenerateGeometryError,
    InternalInvariantError,
    InvalidParameterError,
    MSTMEError,
    PointSetError,
)
from services.solver_service import GraphAlgorithm

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    SUCCESS = 0
    USAGE = 1
    INPUT = 2
    DEGENERATE = 3
    INTERNAL = 4


# CLI spelling of the graph constructions.
ALGORITHM_FLAGS = {
    "mstme": GraphAlgorithm.GREEDY_MSTME,
    "mst": GraphAlgorithm.KRUSKAL,
    "delaunay": GraphAlgorithm.DELAUNAY,
}


class CLIArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of argparse's default 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def bool_flag(value: str) -> bool:
    try:
        return parse_bool(value, "flag")
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def seed_flag(value: str) -> int:
    try:
        return parse_seed(value, "--seed")
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def nonnegative_float(value: str) -> float:
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {value!r}")
    if not number >= 0 or number == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a finite number >= 0, got {value!r}")
    return number


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {number}")
    return number


def parse_levels(value: str) -> List[int]:
    """Parse 'A..B' (inclusive), a single level or a comma-separated list."""
    try:
        if ".." in value:
            start_text, stop_text = value.split("..", 1)
            start, stop = int(start_text), int(stop_text)
            if stop < start:
                raise argparse.ArgumentTypeError(f"empty level range {value!r}")
            levels = list(range(start, stop + 1))
        else:
            levels = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"levels must look like 1..10 or 1,3,5, got {value!r}")
    if not levels or any(level < 0 for level in levels):
        raise argparse.ArgumentTypeError(f"levels must be non-negative integers, got {value!r}")
    return levels


def parse_lambdas(value: str) -> List[float]:
    return [nonnegative_float(part.strip()) for part in value.split(",") if part.strip()]


def run_guarded(command: str, handler: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    """Run a command handler and translate package errors into exit codes."""
    try:
        return int(handler(args))
    except DegenerateGeometryError as e:
        logger.warning(f"{command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.DEGENERATE
    except (PointSetError, InvalidParameterError) as e:
        logger.warning(f"{command}: invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.INPUT
    except OSError as e:
        logger.warning(f"{command}: I/O error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.INPUT
    except (InternalInvariantError, ContractError) as e:
        logger.error(f"{command}: internal assertion failed: {e}", exc_info=True)
        print(f"internal error: {e}", file=sys.stderr)
        return ExitCode.INTERNAL
    except MSTMEError as e:
        logger.error(f"{command}: unexpected error: {e}", exc_info=True)
        print(f"internal error: {e}", file=sys.stderr)
        return ExitCode.INTERNAL
