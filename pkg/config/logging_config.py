"""Logging configuration for the MSTME command-line tools."""

import logging
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional


def setup_logging(log_level: str = "INFO", log_dir: Optional[str] = "logs") -> None:
    """
    Configure logging for the application.

    Creates a console handler on stderr and, when `log_dir` is usable, a
    rotating file handler. Program output (edge lists, summaries) is written
    to stdout separately and never goes through logging.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory for log files; empty or None disables file logging
    """
    level = getattr(logging, log_level.upper(), logging.INFO)

    directory: Optional[Path] = Path(log_dir) if log_dir else None
    if directory is not None:
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            print(f"Warning: Cannot create logs directory: {e}", file=sys.stderr)
            print("Logging to console only", file=sys.stderr)
            directory = None

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Remove existing handlers to avoid duplicates
    root_logger.handlers.clear()

    detailed_formatter = logging.Formatter(
        fmt="%(asctime)s | %(levelname)-8s | %(name)s:%(funcName)s:%(lineno)d | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    console_formatter = logging.Formatter(
        fmt="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s", datefmt="%H:%M:%S"
    )

    log_file = None
    if directory is not None:
        try:
            log_file = directory / f"mstme_{datetime.now().strftime('%Y%m%d')}.log"
            file_handler = RotatingFileHandler(
                log_file,
                maxBytes=10 * 1024 * 1024,  # 10 MB
                backupCount=5,
                encoding="utf-8",
            )
            file_handler.setLevel(logging.DEBUG)  # Log everything to file
            file_handler.setFormatter(detailed_formatter)
            root_logger.addHandler(file_handler)
        except OSError as e:
            print(f"Warning: Cannot create log file: {e}", file=sys.stderr)
            print("Logging to console only", file=sys.stderr)
            log_file = None

    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_handler.setFormatter(console_formatter)
    root_logger.addHandler(console_handler)

    root_logger.debug("Logging system initialized")
    root_logger.debug(f"Log level: {log_level.upper()}")
    if log_file is not None:
        root_logger.debug(f"Log file: {log_file}")
    else:
        root_logger.debug("Console logging only (no file logging)")


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a module.

    Args:
        name: Name of the module (usually __name__)

    Returns:
        Configured logger instance
    """
    return logging.getLogger(name)
