"""
Settings for ncideals.

Settings are read in three layers: the field defaults below, the YAML file
``config/defaults.yaml`` (or the file named by ``NCIDEALS_CONFIG``), and
``NCIDEALS_<FIELD>`` environment variables, which may come from a ``.env``
file.
"""

from __future__ import annotations

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

ENV_PREFIX = "NCIDEALS_"

_PROJECT_ROOT = Path(__file__).parent.parent.parent


class Settings(BaseModel):
    """Run defaults.

    Attributes:
        gamma3_bound: Degree bound for the gamma3 verification.
        tideal_bound: Degree bound for the T-ideal verification.
        default_vars: Variable count when none is given.
        oracle_max_words: Largest component the dimension oracle accepts.
        oracle_bound: Highest total degree whose rows get an oracle value in the
            verify workflows (0 = no oracle column).
        jobs: Worker cap for verification rows (``None`` = all cores).
        random_seed: Seed for randomized Grassmann checks.
        grassmann_samples: Random assignments per polynomial.
        grassmann_generators: Grassmann generators used by random assignments.
        log_level: Root log level for the CLI.
        report_dir: Directory for reports written without an explicit path.
    """
    gamma3_bound: int = Field(default=6, ge=1)
    tideal_bound: int = Field(default=8, ge=1)
    default_vars: int = Field(default=3, ge=1)
    oracle_max_words: int = Field(default=20000, ge=1)
    oracle_bound: int = Field(default=6, ge=0)
    jobs: Optional[int] = Field(default=None, ge=1)
    random_seed: int = Field(default=20080101)
    grassmann_samples: int = Field(default=50, ge=1)
    grassmann_generators: int = Field(default=4, ge=1)
    log_level: str = Field(default="INFO")
    report_dir: Optional[Path] = Field(default=None)


def _load_env() -> None:
    for env_path in (_PROJECT_ROOT / ".env", Path.cwd() / ".env"):
        if env_path.exists():
            load_dotenv(env_path)
            break


def default_config_path() -> Path:
    override = os.getenv(f"{ENV_PREFIX}CONFIG")
    if override:
        return Path(override)
    return _PROJECT_ROOT / "config" / "defaults.yaml"


def _read_yaml(path: Path) -> dict[str, Any]:
    if not path.exists():
        logger.debug("no settings file at %s, using defaults", path)
        return {}
    data = yaml.safe_load(path.read_text()) or {}
    return dict(data.get("settings", {}))


def _read_env() -> dict[str, str]:
    values: dict[str, str] = {}
    for name in Settings.model_fields:
        raw = os.getenv(f"{ENV_PREFIX}{name.upper()}")
        if raw is not None:
            values[name] = raw
    return values


def load_settings(path: Optional[Path] = None) -> Settings:
    """Load settings without caching.

    Args:
        path: YAML file to read; defaults to ``default_config_path()``.

    Returns:
        Validated settings.

    Raises:
        pydantic.ValidationError: If a value has the wrong type or range.
    """
    _load_env()
    values = _read_yaml(path or default_config_path())
    values.update(_read_env())
    return Settings.model_validate(values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings, loaded once."""
    return load_settings()
