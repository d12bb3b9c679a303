"""Configuration module."""

from .app_config import AppConfig, parse_bool, parse_seed

__all__ = ["AppConfig", "parse_bool", "parse_seed"]
