"""Logging utilities shared by the library and the CLI."""

from quiverlab.utils.helpers import setup_logging
from quiverlab.utils.run_logger import RunLogger, get_run_logger, init_run_logger

__all__ = ["setup_logging", "RunLogger", "get_run_logger", "init_run_logger"]
