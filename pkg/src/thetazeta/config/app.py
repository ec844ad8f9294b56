from __future__ import annotations

import sys
from functools import lru_cache

import structlog

from .base import get_settings

__all__ = ("configure_logging",)


@lru_cache
def _is_tty() -> bool:
    return bool(sys.stderr.isatty())


def _processors(as_json: bool) -> list[structlog.typing.Processor]:
    processors: list[structlog.typing.Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso", utc=True),
        structlog.processors.EventRenamer("message"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]
    if as_json:
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(event_key="message"))
    return processors


def configure_logging(level: int | None = None) -> None:
    """Configure structlog for the command line.

    Logs go to stderr so that report data on stdout stays machine readable.
    JSON lines are emitted when stderr is not a terminal.

    Args:
        level: Stdlib log level; defaults to ``LogSettings.LEVEL``.
    """
    settings = get_settings()
    structlog.configure(
        processors=_processors(as_json=not _is_tty()),
        wrapper_class=structlog.make_filtering_bound_logger(level if level is not None else settings.log.LEVEL),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
