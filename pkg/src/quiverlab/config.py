"""Environment-driven settings for quiverlab."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from quiverlab.exceptions import ConfigurationError

try:
    from dotenv import load_dotenv
except ImportError:  # pragma: no cover - fallback when dependency not installed

    def load_dotenv() -> bool:
        logging.getLogger(__name__).warning(
            "python-dotenv not installed; skipping .env load"
        )
        return False


load_dotenv()  # Load environment variables from .env file

DEFAULT_FIELD = "Q"
DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_STEP_BUDGET = 64
DEFAULT_SEARCH_LIMIT = 64
DEFAULT_ROOT_BOX = 6

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """
    Resolved configuration values.

    Attributes:
        default_field: Field descriptor used when a file omits one.
        log_level: Root logging level name.
        log_file: Optional path of a log file handler.
        run_log_dir: Directory for RunLogger output; None disables run logs.
        step_budget: Coxeter steps allowed when recovering (i, r) tags.
        search_limit: Small-integer combinations tried by candidate searches.
        root_box: Upper bound of the Dynkin root search box.
    """

    default_field: str = DEFAULT_FIELD
    log_level: str = DEFAULT_LOG_LEVEL
    log_file: Optional[str] = None
    run_log_dir: Optional[str] = None
    step_budget: int = DEFAULT_STEP_BUDGET
    search_limit: int = DEFAULT_SEARCH_LIMIT
    root_box: int = DEFAULT_ROOT_BOX


def _positive_int(env: Mapping[str, str], key: str, default: int) -> int:
    raw = env.get(key)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigurationError(
            f"{key} must be an integer, got {raw!r}",
            config_key=key,
            expected_type="positive int",
        ) from exc
    if value <= 0:
        raise ConfigurationError(
            f"{key} must be positive, got {value}",
            config_key=key,
            expected_type="positive int",
        )
    return value


def load_settings(env: Optional[Mapping[str, str]] = None) -> Settings:
    """
    Read settings from the environment.

    Args:
        env: Mapping to read instead of os.environ (used by tests).

    Returns:
        A frozen Settings instance.

    Raises:
        ConfigurationError: If a value is malformed.
    """
    env = os.environ if env is None else env
    level = env.get("QUIVERLAB_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    if level not in _LOG_LEVELS:
        raise ConfigurationError(
            f"QUIVERLAB_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}",
            config_key="QUIVERLAB_LOG_LEVEL",
            expected_type="log level name",
        )
    return Settings(
        default_field=env.get("QUIVERLAB_DEFAULT_FIELD", DEFAULT_FIELD) or DEFAULT_FIELD,
        log_level=level,
        log_file=env.get("QUIVERLAB_LOG_FILE") or None,
        run_log_dir=env.get("QUIVERLAB_RUN_LOG_DIR") or None,
        step_budget=_positive_int(env, "QUIVERLAB_STEP_BUDGET", DEFAULT_STEP_BUDGET),
        search_limit=_positive_int(env, "QUIVERLAB_SEARCH_LIMIT", DEFAULT_SEARCH_LIMIT),
        root_box=_positive_int(env, "QUIVERLAB_ROOT_BOX", DEFAULT_ROOT_BOX),
    )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Return the process-wide settings, loading them on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def reset_settings(settings: Optional[Settings] = None) -> Settings:
    """Replace the cached settings (reloads from the environment when None)."""
    global _settings
    _settings = settings if settings is not None else load_settings()
    return _settings
