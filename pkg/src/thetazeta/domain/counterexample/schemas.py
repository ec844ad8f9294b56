from __future__ import annotations

from typing import Any

import mpmath as mp

from thetazeta.config.constants import COUNTEREXAMPLE_FREQUENCY, COUNTEREXAMPLE_GAMMA_BOUND
from thetazeta.config.schema import FrozenStruct
from thetazeta.domain.theta import RadiusMethod
from thetazeta.lib.exceptions import DomainError

__all__ = ("CalibrationReport", "ComparisonRow", "CounterexampleSpec")


class CounterexampleSpec(FrozenStruct, frozen=True):
    """σ(t) = 2cos(ω ln t)/t^γ on [1, ∞) with γ < 1/4."""

    gamma: float
    frequency: float = COUNTEREXAMPLE_FREQUENCY

    def __post_init__(self) -> None:
        if not self.gamma < COUNTEREXAMPLE_GAMMA_BOUND:
            msg = f"gamma must be below {COUNTEREXAMPLE_GAMMA_BOUND}, got {self.gamma}"
            raise DomainError(msg)
        if self.frequency <= 0:
            msg = f"frequency must be positive, got {self.frequency}"
            raise DomainError(msg)

    @property
    def pole_pair(self) -> tuple[mp.mpc, mp.mpc]:
        """The poles 1 − γ ± iω of the transform, upper first."""
        real = 1 - mp.mpf(self.gamma)
        omega = mp.mpf(self.frequency)
        return mp.mpc(real, omega), mp.mpc(real, -omega)


class ComparisonRow(FrozenStruct, frozen=True):
    """Closed form against quadrature at one point; ``error`` set in expected-error rows."""

    z: Any
    gamma: float
    closed: Any = None
    numeric: Any = None
    residual: float | None = None
    error_bound: float | None = None
    truncation_T: Any = None
    error: str | None = None


class CalibrationReport(FrozenStruct, frozen=True):
    center: Any
    gamma: float
    N: int
    method: RadiusMethod
    ground_truth: float
    estimate: float | None
    relative_error: float | None
    tolerance: float
    passed: bool
    caveats: list[str]
