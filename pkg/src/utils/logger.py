"""Logging configuration using loguru.

- Console sink goes to stderr; stdout is reserved for command results
- Optional file sinks under ``settings.log_dir``: ``app.log`` and ``errors.log``
  with size-based rotation and compression
"""

import sys
from pathlib import Path

from loguru import logger

from src.config import settings


def setup_logger():
    """Configure loguru once for the whole package.

    Log Files (only when ``settings.log_to_file`` is on):
    - app.log: Main log (rotates at 50MB, keeps 30 days)
    - errors.log: Error-only log (rotates at 10MB, keeps 90 days)
    """
    logger.remove()

    log_format = (
        "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
        "<level>{message}</level>"
    )

    logger.add(
        sys.stderr,
        format=log_format,
        level=settings.log_level.upper(),
        colorize=True,
    )

    if settings.log_to_file:
        log_dir = Path(settings.log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)

        logger.add(
            str(log_dir / "app.log"),
            format=log_format,
            level="DEBUG" if settings.is_development else "INFO",
            rotation="50 MB",
            retention="30 days",
            compression="zip",
            enqueue=True,
            backtrace=True,
            diagnose=True,
        )

        logger.add(
            str(log_dir / "errors.log"),
            format=log_format,
            level="ERROR",
            rotation="10 MB",
            retention="90 days",
            compression="zip",
            enqueue=True,
            backtrace=True,
            diagnose=True,
        )

    return logger


# Initialize logger
log = setup_logger()
