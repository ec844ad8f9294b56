from __future__ import annotations

from enum import StrEnum
from typing import Any

from thetazeta.config.schema import FrozenStruct

__all__ = ("LogDerivDecomposition", "ZeroRefinement", "ZetaEvaluation", "ZetaMethod")


class ZetaMethod(StrEnum):
    DIRICHLET_EM = "dirichlet_em"
    """Partial Dirichlet sum with an Euler-Maclaurin correction."""
    INTEGRAL_REPR = "integral_repr"
    """1/(z-1) + 1/2 + z * integral of (1/2 - {t}) t^(-z-1) over [1, inf)."""


class ZetaEvaluation(FrozenStruct, frozen=True):
    z: Any
    value: Any
    method: ZetaMethod
    error_bound: float
    terms: int
    """Dirichlet terms summed, or the integer truncation of the integral."""


class LogDerivDecomposition(FrozenStruct, frozen=True):
    """zeta'/zeta split into its pole part -1/(z-1) and the remainder F."""

    z: Any
    pole_part: Any
    F_value: Any
    psi_value: Any
    error_bound: float
    log_derivative: Any
    """zeta'(z)/zeta(z) from the term-differentiated series, for comparison."""


class ZeroRefinement(FrozenStruct, frozen=True):
    listed: float
    refined: Any
    abs_zeta: Any
    flagged: bool
