from __future__ import annotations

from . import constants
from .app import configure_logging
from .base import Settings, get_settings

__all__ = (
    "Settings",
    "configure_logging",
    "constants",
    "get_settings",
)
