from __future__ import annotations

from .schemas import PrecisionConfig, QuadratureResult, SmoothKernel, TailModel
from .service import (
    integrate_li_polynomial,
    integrate_smooth_weighted,
    integrate_step_weighted,
    integrate_step_weighted_orders,
    moment_rounding,
    prime_log_moments,
    tail_bound,
)
from .special import (
    entire_pole_combination,
    exp_integral_e1,
    li_offset,
    log_power_antiderivative,
)

__all__ = (
    "PrecisionConfig",
    "QuadratureResult",
    "SmoothKernel",
    "TailModel",
    "entire_pole_combination",
    "exp_integral_e1",
    "integrate_li_polynomial",
    "integrate_smooth_weighted",
    "integrate_step_weighted",
    "integrate_step_weighted_orders",
    "li_offset",
    "log_power_antiderivative",
    "moment_rounding",
    "prime_log_moments",
    "tail_bound",
)
