"""
Configuration for arcmodel.

This module provides the Settings model holding library defaults and the
environment overrides read by the CLI.
"""

import os
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict

CACHE_DIR_ENV = "ARCMODEL_CACHE_DIR"
LOG_LEVEL_ENV = "ARCMODEL_LOG_LEVEL"

DEFAULT_CACHE_DIR = Path.home() / ".arcmodel" / "cache"

# Structured text schema version shared by manifests, curve files and reports.
SCHEMA_VERSION = "1"


class Settings(BaseModel):
    """Library defaults, overridable from the environment and the CLI."""
    model_config = ConfigDict(extra="forbid")

    cache_dir: Path = DEFAULT_CACHE_DIR
    log_level: str = "INFO"
    # Generators with i(mu, z mu) above this bound are flagged.
    intersection_bound: int = 64
    exact_cover_limit: int = 60
    # d_C(a, b) <= curve_graph_log_factor * log2(i(a, b)) + curve_graph_offset
    curve_graph_log_factor: float = 2.0
    curve_graph_offset: float = 2.0
    farey_denominator_bound: int = 30
    distance_samples: int = 50
    seed: int = 0

    @classmethod
    def from_env(cls, cache_dir: Optional[str] = None, **overrides) -> "Settings":
        """Build settings from the environment, then apply explicit overrides.

        Args:
            cache_dir: Cache directory given on the command line
            **overrides: Any other field values

        Returns:
            The resolved settings
        """
        values = {}
        env_cache = os.environ.get(CACHE_DIR_ENV)
        if env_cache:
            values["cache_dir"] = Path(env_cache).expanduser()
        env_level = os.environ.get(LOG_LEVEL_ENV)
        if env_level:
            values["log_level"] = env_level.upper()
        if cache_dir:
            values["cache_dir"] = Path(cache_dir).expanduser()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


settings = Settings()
