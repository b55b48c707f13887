"""Logger setup shared by the command line and the tool server."""

import logging

from .config import get_settings

FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Package logger; module loggers (swtorsion.laurent, ...) propagate to it
logger = logging.getLogger("swtorsion")


def owned_handlers(log: logging.Logger = logger) -> list[logging.Handler]:
    """Handlers attached by ensure_logger_configured, ignoring any added by others."""
    return [h for h in log.handlers if getattr(h, "_swtorsion", False)]


def ensure_logger_configured(level_name: str | None = None) -> None:
    """Ensure the package logger emits to the console at the configured level.

    Safe to call repeatedly; only one handler of ours is ever attached and
    handlers installed by others keep their own level.

    Args:
        level_name: overrides SWTORSION_LOG_LEVEL when given.
    """
    level_name = (level_name or get_settings().log_level).upper()
    level = getattr(logging, level_name, logging.WARNING)

    handlers = owned_handlers()
    if not handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(FORMAT))
        handler._swtorsion = True  # type: ignore[attr-defined]
        logger.addHandler(handler)
        # Avoid duplicate lines when the root logger is configured too
        logger.propagate = False
        handlers = [handler]

    for handler in handlers:
        handler.setLevel(level)
    logger.setLevel(level)
    logger.debug("Log level: %s", level_name)
