from __future__ import annotations

from .radius import estimate_radius
from .schemas import RadiusEstimate, RadiusMethod, ScanRow, TaylorExpansion
from .service import (
    build_expansion,
    phi_diff,
    task1_scan,
    theta,
    theta_closed_form,
    theta_derivative,
    theta_orders,
)

__all__ = (
    "RadiusEstimate",
    "RadiusMethod",
    "ScanRow",
    "TaylorExpansion",
    "build_expansion",
    "estimate_radius",
    "phi_diff",
    "task1_scan",
    "theta",
    "theta_closed_form",
    "theta_derivative",
    "theta_orders",
)
