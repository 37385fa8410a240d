import logging
from logging import Logger
from typing import List, Optional

from quiverlab.config import get_settings


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> Logger:
    """Configure the standard Python logger for quiverlab."""
    settings = get_settings()
    level = level or settings.log_level
    log_file = log_file or settings.log_file
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
    )
    logger = logging.getLogger("quiverlab")
    logger.setLevel(getattr(logging, level.upper()))
    return logger


__all__ = ["setup_logging"]
