from __future__ import annotations

from enum import StrEnum
from typing import Any

import msgspec

from thetazeta.config.schema import FrozenStruct

__all__ = ("IdentityId", "IdentityReport")


class IdentityId(StrEnum):
    EQ5 = "eq5"
    """exp P(z) = zeta(z) exp(-f(z))."""
    EQ6 = "eq6"
    """Prime log sum against the phi-weighted integral."""
    EQ7_HOLOMORPHY = "eq7_holomorphy"
    """Phi(z) as an entire term plus f'(z) - F(z)."""


class IdentityReport(FrozenStruct, frozen=True):
    """One numeric check of an identity at ``z``.

    ``truncation_bound`` bounds the residual the truncations alone can
    produce; ``diagnostics`` carries named side checks (printed variants of
    the identity, exact truncated forms, constants).
    """

    identity_id: IdentityId
    z: Any
    lhs: Any
    rhs: Any
    residual: float
    prime_limit: int
    truncation_bound: float
    integral_T: Any = None
    orientation: str | None = None
    diagnostics: dict[str, Any] = msgspec.field(default_factory=dict)
