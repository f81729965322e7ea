"""
Configuration loading for farey.
"""

from __future__ import annotations
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Dict, Any

try:
    import tomllib as tomli
    HAS_TOMLI = True
except ImportError:
    try:
        import tomli
        HAS_TOMLI = True
    except ImportError:
        HAS_TOMLI = False

logger = logging.getLogger(__name__)


@dataclass
class FareyConfig:
    """Full configuration for farey."""
    # Work limits
    class_number_limit: int = 10_000_000
    jobs: int = 1

    # Output settings
    json_output: bool = False
    svg_size: float = 320.0

    # UI settings
    verbose: bool = False


DEFAULT_CONFIG_PATHS = [
    Path.home() / ".config" / "farey" / "config.toml",
    Path.home() / ".fareyrc",
    Path("farey.toml"),
]

_TRUE_VALUES = ("true", "1", "yes")


def load_config_file(path: Path) -> Dict[str, Any]:
    """
    Load config from a TOML file.

    Args:
        path: Path to config file

    Returns:
        Dict of config values

    Raises:
        FileNotFoundError: If file doesn't exist
        RuntimeError: If no TOML parser is available
    """
    if not HAS_TOMLI:
        raise RuntimeError("tomli required to load config files: pip install tomli")

    with open(path, "rb") as f:
        return tomli.load(f)


def _as_bool(value: Any) -> bool:
    if isinstance(value, str):
        return value.lower() in _TRUE_VALUES
    return bool(value)


def load_config(
    config_path: Optional[Path] = None,
) -> FareyConfig:
    """
    Load configuration from environment variables and/or config file.

    Priority (highest to lowest):
    1. Environment variables (FAREY_*)
    2. Explicit config file
    3. Default config file locations
    4. Built-in defaults

    Args:
        config_path: Explicit path to config file

    Returns:
        FareyConfig with merged values
    """
    config = FareyConfig()

    file_config: Dict[str, Any] = {}

    paths_to_try = [config_path] if config_path else DEFAULT_CONFIG_PATHS
    for path in paths_to_try:
        if path and path.exists():
            try:
                file_config = load_config_file(path)
                break
            except Exception as e:
                logger.debug("skipping config file %s: %s", path, e)

    if "class_number_limit" in file_config:
        config.class_number_limit = int(file_config["class_number_limit"])
    if "jobs" in file_config:
        config.jobs = int(file_config["jobs"])
    if "json_output" in file_config:
        config.json_output = _as_bool(file_config["json_output"])
    if "svg_size" in file_config:
        config.svg_size = float(file_config["svg_size"])
    if "verbose" in file_config:
        config.verbose = _as_bool(file_config["verbose"])

    # Environment variables override everything
    env_limit = os.environ.get("FAREY_CLASS_NUMBER_LIMIT")
    if env_limit:
        config.class_number_limit = int(env_limit)

    env_jobs = os.environ.get("FAREY_JOBS")
    if env_jobs:
        config.jobs = int(env_jobs)

    env_json = os.environ.get("FAREY_JSON")
    if env_json:
        config.json_output = _as_bool(env_json)

    env_size = os.environ.get("FAREY_SVG_SIZE")
    if env_size:
        config.svg_size = float(env_size)

    env_verbose = os.environ.get("FAREY_VERBOSE")
    if env_verbose:
        config.verbose = _as_bool(env_verbose)

    return config
