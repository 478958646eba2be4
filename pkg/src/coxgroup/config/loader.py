"""Experiment configuration loading."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError as PydanticValidationError

from coxgroup.config.schema import ExperimentConfig
from coxgroup.errors import ConfigurationError

CONFIG_FILENAME = "coxgroup.yaml"
ALT_CONFIG_FILENAME = "coxgroup.yml"
CONFIG_FILENAMES = (CONFIG_FILENAME, ALT_CONFIG_FILENAME)


def find_config_file(directory: Path | None = None) -> Path | None:
    """Return coxgroup.yaml (or .yml) in ``directory`` (default cwd), if present."""
    directory = (directory or Path.cwd()).resolve()
    for filename in CONFIG_FILENAMES:
        candidate = directory / filename
        if candidate.is_file():
            return candidate
    return None


def load_yaml(path: Path) -> dict[str, Any]:
    """Load and parse a YAML mapping.

    Raises:
        ConfigurationError: If the file cannot be read or is not a mapping.
    """
    try:
        with open(path, encoding="utf-8") as f:
            content = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML syntax: {e}", path=path) from e
    except OSError as e:
        raise ConfigurationError(f"Cannot read file: {e}", path=path) from e
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise ConfigurationError("Configuration must be a YAML mapping (dictionary)", path=path)
    return content


def build_config(raw: dict[str, Any], path: Path | None = None) -> ExperimentConfig:
    """Validate a raw mapping into an ExperimentConfig.

    Raises:
        ConfigurationError: Listing every ``loc: msg`` validation failure.
    """
    try:
        return ExperimentConfig(**raw)
    except PydanticValidationError as e:
        errors = []
        for error in e.errors():
            loc = ".".join(str(x) for x in error["loc"]) or "config"
            errors.append(f"  {loc}: {error['msg']}")
        raise ConfigurationError(
            "Invalid configuration:\n" + "\n".join(errors), path=path
        ) from e


def load_config(
    path: Path | None = None,
    overrides: dict[str, Any] | None = None,
    *,
    search: bool = True,
) -> ExperimentConfig:
    """Load a config file and apply overrides on top of it.

    Precedence is override > file > model default. Overrides whose value is
    None are ignored. Relative paths in the file resolve against the file's
    directory.

    Args:
        path: Explicit config file.
        overrides: Values from the command line.
        search: Look for coxgroup.yaml in the cwd when ``path`` is None.

    Returns:
        Validated configuration.

    Raises:
        ConfigurationError: If the file is missing or invalid.
    """
    raw: dict[str, Any] = {}
    if path is None and search:
        path = find_config_file()
    if path is not None:
        path = path.resolve()
        if not path.is_file():
            raise ConfigurationError(f"Config file not found: {path}")
        raw = load_yaml(path)
        for key in ("dataset", "output", "truth_region"):
            value = raw.get(key)
            if isinstance(value, str) and not Path(value).is_absolute():
                raw[key] = str(path.parent / value)

    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    # A dataset source given on the command line replaces the file's source.
    if "dataset" in overrides:
        raw.pop("synth", None)
    if "synth" in overrides:
        raw.pop("dataset", None)
    raw.update(overrides)
    return build_config(raw, path)
