"""
Runtime settings, read from the environment (and a local .env file).
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import load_dotenv

from src.errors import ConfigurationError

MAX_UNIVERSE = 16
ENUMERATION_CAP = 4
LONG_RUN_CAP = 5

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off", ""}


def _read_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


def _read_bool(name: str, default: bool) -> bool:
    raw = os.environ.get(name)
    if raw is None:
        return default
    lowered = raw.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ConfigurationError(f"{name} must be a boolean, got {raw!r}")


@dataclass(frozen=True)
class AuditSettings:
    """Knobs for enumeration and auditing."""

    jobs: int = 1
    candidate_budget: int = 256
    long_run: bool = False
    random_families: int = 0
    seed: int = 20240601
    progress: bool = True
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, dotenv_path: Optional[str] = None) -> "AuditSettings":
        """
        Build settings from FRANKL_* environment variables.

        Args:
            dotenv_path: Explicit .env file; the default search is used when None

        Returns:
            AuditSettings with environment overrides applied
        """
        load_dotenv(dotenv_path)

        level = os.environ.get("FRANKL_LOG_LEVEL", cls.log_level).upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ConfigurationError(f"FRANKL_LOG_LEVEL is not a logging level: {level!r}")

        return cls(
            jobs=_read_int("FRANKL_JOBS", cls.jobs, minimum=1),
            candidate_budget=_read_int("FRANKL_CANDIDATE_BUDGET", cls.candidate_budget, minimum=1),
            long_run=_read_bool("FRANKL_LONG_RUN", cls.long_run),
            random_families=_read_int("FRANKL_RANDOM_FAMILIES", cls.random_families),
            seed=_read_int("FRANKL_SEED", cls.seed),
            progress=_read_bool("FRANKL_PROGRESS", cls.progress),
            log_level=level,
        )

    def override(self, **changes) -> "AuditSettings":
        """Return a copy with the non-None keyword values applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    @property
    def enumeration_cap(self) -> int:
        return LONG_RUN_CAP if self.long_run else ENUMERATION_CAP
