from __future__ import annotations

from .schemas import CalibrationReport, ComparisonRow, CounterexampleSpec
from .service import (
    calibrate,
    ce_expansion_ground_truth,
    ce_phi_closed,
    ce_phi_numeric,
    ce_taylor_expansion,
    compare_grid,
    default_comparison_grid,
    sigma,
)

__all__ = (
    "CalibrationReport",
    "ComparisonRow",
    "CounterexampleSpec",
    "calibrate",
    "ce_expansion_ground_truth",
    "ce_phi_closed",
    "ce_phi_numeric",
    "ce_taylor_expansion",
    "compare_grid",
    "default_comparison_grid",
    "sigma",
)
