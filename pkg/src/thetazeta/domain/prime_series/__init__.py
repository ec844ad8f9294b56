from __future__ import annotations

from .schemas import IdentityId, IdentityReport
from .service import (
    PHI_ORIENTATION,
    check_eq5,
    check_eq6,
    check_eq7_holomorphy,
    default_grid,
    f_correction,
    f_correction_derivative,
    phi_cap,
    prime_log_sum,
    prime_zeta,
)

__all__ = (
    "PHI_ORIENTATION",
    "IdentityId",
    "IdentityReport",
    "check_eq5",
    "check_eq6",
    "check_eq7_holomorphy",
    "default_grid",
    "f_correction",
    "f_correction_derivative",
    "phi_cap",
    "prime_log_sum",
    "prime_zeta",
)
