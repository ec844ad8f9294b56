from __future__ import annotations

import math
from enum import StrEnum
from typing import Any

import msgspec

from thetazeta.config.base import get_settings
from thetazeta.config.constants import MIN_DIGITS
from thetazeta.config.schema import FrozenStruct
from thetazeta.lib.exceptions import ConfigError

__all__ = ("PrecisionConfig", "QuadratureResult", "SmoothKernel", "TailModel")


class SmoothKernel(StrEnum):
    """Smooth factors f(t) the quadrature engine integrates against lnⁿt·t^(−z−1)."""

    LI = "li"
    SIGMA_COUNTEREXAMPLE = "sigma_counterexample"
    FRACTIONAL_PART_KERNEL = "fractional_part_kernel"


class TailModel(StrEnum):
    """Growth models behind the closed-form tail bounds."""

    UNCONDITIONAL = "unconditional"
    """|pi(t) - Li(t)| <= t exp(-0.005 (ln t)^(3/5))."""
    SQUARE_ROOT = "square_root"
    """|pi(t) - Li(t)| <= sqrt(t) ln t."""
    PRIME_STEP = "prime_step"
    LI_SMOOTH = "li_smooth"
    FRACTIONAL_PART = "fractional_part"
    SIGMA_GEOMETRIC = "sigma_geometric"
    PRIME_SUM = "prime_sum"
    """Sum over primes past the table limit, bounded by the integral over t."""
    NONE = "none"
    """Integral over a finite range with nothing truncated."""


class PrecisionConfig(FrozenStruct, frozen=True):
    """Working precision and tolerances shared by every evaluation."""

    digits: int = 30
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_order: int = 40

    def __post_init__(self) -> None:
        if self.digits < MIN_DIGITS:
            msg = f"digits must be at least {MIN_DIGITS}, got {self.digits}"
            raise ConfigError(msg)
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            msg = f"tolerances must be positive, got abs_tol={self.abs_tol} rel_tol={self.rel_tol}"
            raise ConfigError(msg)
        if self.max_order < 0:
            msg = f"max_order must be nonnegative, got {self.max_order}"
            raise ConfigError(msg)

    @classmethod
    def from_settings(cls, **overrides: Any) -> PrecisionConfig:
        """Build from :class:`~thetazeta.config.base.PrecisionSettings`, with explicit overrides."""
        settings = get_settings().precision
        values: dict[str, Any] = {
            "digits": settings.DIGITS,
            "abs_tol": settings.ABS_TOL,
            "rel_tol": settings.REL_TOL,
            "max_order": settings.MAX_ORDER,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


class QuadratureResult(FrozenStruct, frozen=True):
    """Value of a truncated integral with its error accounting.

    ``error_bound`` covers the computation on ``[lower, truncation_T]``. Tails
    beyond ``truncation_T`` are listed per model in ``tail_bounds``; results
    standing for an integral to infinity also fold the ``tail_model`` entry
    into ``error_bound``.
    """

    value: Any
    error_bound: float
    truncation_T: Any
    lower: float = 2.0
    tail_model: str = TailModel.NONE
    tail_bounds: dict[str, float] = msgspec.field(default_factory=dict)
    discretization_error: float = 0.0

    def __post_init__(self) -> None:
        if not (self.error_bound >= 0 and math.isfinite(self.error_bound)):
            msg = f"error bound must be finite and nonnegative, got {self.error_bound}"
            raise ValueError(msg)

