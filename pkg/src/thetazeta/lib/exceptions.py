"""Error hierarchy.

Every error raised by the package derives from :class:`ThetaZetaError` and
carries the exit code the command line maps it to.
"""

from __future__ import annotations

from typing import ClassVar

from thetazeta.config.constants import EXIT_RESOURCE, EXIT_TOLERANCE, EXIT_USAGE

__all__ = (
    "CacheFormatError",
    "CacheVersionError",
    "ConfigError",
    "DivergenceError",
    "DomainError",
    "InsufficientDataError",
    "NearZeroError",
    "NoiseFloorError",
    "NotAZeroError",
    "OutOfRangeError",
    "PoleError",
    "ResourceError",
    "ThetaZetaError",
)


class ThetaZetaError(Exception):
    """Base exception type for the package."""

    exit_code: ClassVar[int] = EXIT_USAGE

    def __init__(self, *args: object, detail: str = "") -> None:
        str_args = [str(arg) for arg in args if arg]
        if not detail:
            if str_args:
                detail, *str_args = str_args
            elif hasattr(self, "detail"):
                detail = self.detail
        self.detail = detail
        super().__init__(*str_args)

    def __repr__(self) -> str:
        if self.detail:
            return f"{self.__class__.__name__} - {self.detail}"
        return self.__class__.__name__

    def __str__(self) -> str:
        return " ".join((*self.args, self.detail)).strip()


class DomainError(ThetaZetaError):
    """Argument outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation at, or too close to, a pole."""


class DivergenceError(DomainError):
    """The requested integral does not converge for these parameters."""


class NearZeroError(DomainError):
    """A divisor is too close to zero for a well-conditioned result."""


class OutOfRangeError(ThetaZetaError):
    """Request beyond the reach of the prime table or truncation."""


class ConfigError(ThetaZetaError):
    """Unknown label or a setting outside its accepted range."""


class NotAZeroError(ThetaZetaError):
    """Zero refinement found no minimum small enough to be a zero."""

    exit_code = EXIT_TOLERANCE


class InsufficientDataError(ThetaZetaError):
    """Too few usable coefficients for a radius estimate."""

    exit_code = EXIT_TOLERANCE


class NoiseFloorError(ThetaZetaError):
    """A requested coefficient is not resolved above its error bound."""

    exit_code = EXIT_TOLERANCE


class ResourceError(ThetaZetaError):
    """Memory budget exceeded or a shared resource is locked."""

    exit_code = EXIT_RESOURCE


class CacheFormatError(ThetaZetaError):
    """Prime cache file is corrupt or truncated."""

    exit_code = EXIT_RESOURCE


class CacheVersionError(CacheFormatError):
    """Prime cache file was written by an unsupported format version."""
