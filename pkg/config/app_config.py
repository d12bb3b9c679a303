"""Configuration module for solver and experiment defaults."""

import math
import os
from dataclasses import dataclass

from dotenv import find_dotenv, load_dotenv

_TRUE_VALUES = {"1", "true", "yes", "on"}
_FALSE_VALUES = {"0", "false", "no", "off"}

MAX_SEED = 2**64 - 1


def parse_bool(value: str, name: str) -> bool:
    """Parse a true/false flag value, naming the setting in the error."""
    lowered = value.strip().lower()
    if lowered in _TRUE_VALUES:
        return True
    if lowered in _FALSE_VALUES:
        return False
    raise ValueError(f"{name} must be true or false, got {value!r}")


def parse_seed(value: str, name: str) -> int:
    """Parse a 64-bit unsigned seed."""
    try:
        seed = int(value.strip())
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"{name} must be a 64-bit unsigned integer, got {seed}")
    return seed


@dataclass
class AppConfig:
    """Application configuration settings."""

    log_level: str = "INFO"
    log_dir: str = "logs"
    default_lambda: float = 0.5
    isolated_vertices_in_entropy: bool = True
    disk_uniform_noise: bool = False
    trials: int = 30
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        """Validate numeric ranges."""
        if not math.isfinite(self.default_lambda) or self.default_lambda < 0:
            raise ValueError("MSTME_LAMBDA must be a finite number >= 0")
        if self.trials < 1:
            raise ValueError("MSTME_TRIALS must be >= 1")
        if self.workers < 1:
            raise ValueError("MSTME_WORKERS must be >= 1")
        if not 0 <= self.seed <= MAX_SEED:
            raise ValueError("MSTME_SEED must be a 64-bit unsigned integer")

    @classmethod
    def from_env(cls) -> "AppConfig":
        """Load configuration from environment variables (and a .env file in the working directory)."""
        load_dotenv(find_dotenv(usecwd=True))

        try:
            default_lambda = float(os.getenv("MSTME_LAMBDA", "0.5"))
        except ValueError:
            raise ValueError("MSTME_LAMBDA must be a number")

        try:
            trials = int(os.getenv("MSTME_TRIALS", "30"))
        except ValueError:
            raise ValueError("MSTME_TRIALS must be an integer")

        try:
            workers = int(os.getenv("MSTME_WORKERS", "1"))
        except ValueError:
            raise ValueError("MSTME_WORKERS must be an integer")

        return cls(
            log_level=os.getenv("LOG_LEVEL", "INFO"),
            log_dir=os.getenv("LOG_DIR", "logs"),
            default_lambda=default_lambda,
            isolated_vertices_in_entropy=parse_bool(
                os.getenv("MSTME_ISOLATED_IN_ENTROPY", "true"), "MSTME_ISOLATED_IN_ENTROPY"
            ),
            disk_uniform_noise=parse_bool(os.getenv("MSTME_DISK_UNIFORM_NOISE", "false"), "MSTME_DISK_UNIFORM_NOISE"),
            trials=trials,
            seed=parse_seed(os.getenv("MSTME_SEED", "0"), "MSTME_SEED"),
            workers=workers,
        )
