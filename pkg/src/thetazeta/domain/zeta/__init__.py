from __future__ import annotations

from .schemas import LogDerivDecomposition, ZeroRefinement, ZetaEvaluation, ZetaMethod
from .service import (
    difference_step,
    euler_product,
    log_deriv_decomposition,
    printed_kernel_offset,
    psi,
    refine_listed_zeros,
    refine_zero,
    zeta,
    zeta_derivative,
)

__all__ = (
    "LogDerivDecomposition",
    "ZeroRefinement",
    "ZetaEvaluation",
    "ZetaMethod",
    "difference_step",
    "euler_product",
    "log_deriv_decomposition",
    "printed_kernel_offset",
    "psi",
    "refine_listed_zeros",
    "refine_zero",
    "zeta",
    "zeta_derivative",
)
