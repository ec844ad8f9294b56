from __future__ import annotations

from .commands import thetazeta_group

__all__ = ("thetazeta_group",)
