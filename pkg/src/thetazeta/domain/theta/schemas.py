from __future__ import annotations

from enum import StrEnum
from typing import Any

import msgspec

from thetazeta.config.schema import FrozenStruct

__all__ = ("RadiusEstimate", "RadiusMethod", "ScanRow", "TaylorExpansion")


class RadiusMethod(StrEnum):
    MAX_TAIL_ROOT = "max_tail_root"
    """min over the upper orders of |c_n|^(-1/n)."""
    REGRESSION = "regression"
    """Least squares of log|c_n| against n on the upper concave hull."""


class TaylorExpansion(FrozenStruct, frozen=True):
    """Coefficients c_n = θ⁽ⁿ⁾(center)/n! for n = 0..N.

    ``coeff_error_bounds`` hold the numerical error of each coefficient (the
    noise floor); ``coeff_tail_bounds`` hold the primary tail-model bound for
    the part of the integral beyond ``truncation_T``.
    """

    center: Any
    coefficients: list[Any]
    coeff_error_bounds: list[float]
    N: int
    truncation_T: Any = None
    prime_limit: int | None = None
    digits: int = 30
    coeff_tail_bounds: list[float] = msgspec.field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.coefficients) != self.N + 1 or len(self.coeff_error_bounds) != self.N + 1:
            msg = f"expansion of order {self.N} needs {self.N + 1} coefficients and error bounds"
            raise ValueError(msg)
        if self.coeff_tail_bounds and len(self.coeff_tail_bounds) != self.N + 1:
            msg = f"expansion of order {self.N} needs {self.N + 1} tail bounds"
            raise ValueError(msg)

    @property
    def combined_coefficients(self) -> list[Any]:
        """d_n = (n+1)/n!·[θ⁽ⁿ⁾ + θ⁽ⁿ⁺¹⁾/(n+1)] = (n+1)(c_n + c_(n+1)) for n = 0..N−1."""
        c = self.coefficients
        return [(n + 1) * (c[n] + c[n + 1]) for n in range(self.N)]

    @property
    def combined_error_bounds(self) -> list[float]:
        e = self.coeff_error_bounds
        return [(n + 1) * (e[n] + e[n + 1]) for n in range(self.N)]


class RadiusEstimate(FrozenStruct, frozen=True):
    center: Any
    root_test_values: list[tuple[int, float]]
    combined_root_test_values: list[tuple[int, float]]
    extrapolated_radius: float | None
    """None when the coefficients show no finite radius at this order."""
    method: RadiusMethod
    caveats: list[str]
    noise_floor_order: int | None
    N_used: int
    fit_residual: float | None = None


class ScanRow(FrozenStruct, frozen=True):
    """One b of the scan; ``estimate`` is None and ``error`` set when the point failed."""

    b: float
    epsilon: float
    estimate: RadiusEstimate | None
    error: str | None
    inside_3pi: bool
    inside_4pi: bool
