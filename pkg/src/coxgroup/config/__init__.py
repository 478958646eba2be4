"""Experiment configuration loading and validation."""

from coxgroup.config.loader import (
    CONFIG_FILENAME,
    build_config,
    find_config_file,
    load_config,
    load_yaml,
)
from coxgroup.config.schema import ALL_METHODS, ExperimentConfig, SelectionRule

__all__ = [
    # Loader
    "CONFIG_FILENAME",
    "build_config",
    "find_config_file",
    "load_config",
    "load_yaml",
    # Schema
    "ALL_METHODS",
    "ExperimentConfig",
    "SelectionRule",
]
