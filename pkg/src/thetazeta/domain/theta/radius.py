"""Radius of convergence from a finite run of Taylor coefficients."""

from __future__ import annotations

import math
from typing import Any

import mpmath as mp
import numpy as np
from structlog import get_logger

from thetazeta.config.constants import MIN_USABLE_COEFFICIENTS
from thetazeta.lib.exceptions import InsufficientDataError

from .schemas import RadiusEstimate, RadiusMethod, TaylorExpansion

__all__ = ("estimate_radius", "upper_hull")

logger = get_logger()


def _log_abs(value: Any) -> float:
    return float(mp.log(abs(value)))


def _usable(coefficients: list[Any], errors: list[float]) -> list[int]:
    return [n for n in range(1, len(coefficients)) if abs(coefficients[n]) > errors[n] and coefficients[n] != 0]


def _root_values(orders: list[int], coefficients: list[Any]) -> list[tuple[int, float]]:
    return [(n, math.exp(-_log_abs(coefficients[n]) / n)) for n in orders]


def upper_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Upper concave hull of points sorted by abscissa (monotone chain)."""
    hull: list[tuple[float, float]] = []
    for point in points:
        while len(hull) >= 2:  # noqa: PLR2004
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (x1 - x0) * (point[1] - y0) - (y1 - y0) * (point[0] - x0) >= 0:
                hull.pop()
            else:
                break
        hull.append(point)
    return hull


def estimate_radius(exp: TaylorExpansion, method: RadiusMethod | str = RadiusMethod.REGRESSION) -> RadiusEstimate:
    """Estimate the radius of convergence of ``exp`` by a Cauchy-Hadamard proxy.

    Only orders n >= 1 with |c_n| above its error bound are used, and of
    those only the upper half of the orders (n >= N/2) enters the estimate.

    Args:
        exp: The expansion.
        method: ``max_tail_root`` takes min |c_n|^(−1/n); ``regression`` fits
            log|c_n| ≈ −n·log R + b on the upper concave hull of the points,
            which follows the envelope of oscillating coefficients.

    Raises:
        InsufficientDataError: Fewer than 8 usable coefficients.
    """
    method = RadiusMethod(method)
    coefficients = exp.coefficients
    errors = exp.coeff_error_bounds
    usable = _usable(coefficients, errors)
    if len(usable) < MIN_USABLE_COEFFICIENTS:
        msg = (
            f"only {len(usable)} coefficients exceed their error bounds; "
            f"at least {MIN_USABLE_COEFFICIENTS} are needed"
        )
        raise InsufficientDataError(msg)
    noise_floor_order = next((n for n in range(1, exp.N + 1) if n not in usable), None)
    upper = [n for n in usable if 2 * n >= exp.N] or usable[len(usable) // 2 :]
    root_values = _root_values(usable, coefficients)

    combined = exp.combined_coefficients
    combined_errors = exp.combined_error_bounds
    combined_roots = _root_values(_usable(combined, combined_errors), combined)

    fit_residual = None
    if method is RadiusMethod.MAX_TAIL_ROOT:
        radius = min(value for n, value in root_values if n in upper)
    else:
        points = [(float(n), _log_abs(coefficients[n])) for n in upper]
        hull = upper_hull(points)
        if len(hull) < 2:  # noqa: PLR2004
            hull = points
        xs = np.array([x for x, _ in hull])
        ys = np.array([y for _, y in hull])
        slope, intercept = np.polyfit(xs, ys, 1)
        fit_residual = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
        radius = math.exp(-slope) if -slope < math.log(np.finfo(float).max) else math.inf

    caveats = []
    if noise_floor_order is not None:
        caveats.append(f"coefficients from order {noise_floor_order} on are not all above their error bounds")
    if exp.coeff_tail_bounds:
        dominated = [n for n in usable if exp.coeff_tail_bounds[n] > abs(coefficients[n])]
        if dominated:
            caveats.append(
                f"truncation at T = {mp.nstr(exp.truncation_T, 6)}: tail bounds exceed |c_n| for {len(dominated)} "
                f"of {len(usable)} usable orders; the estimate describes the truncated integral",
            )
    upper_roots = [value for n, value in root_values if n in upper]
    if len(upper_roots) > 2 and all(b > a for a, b in zip(upper_roots, upper_roots[1:], strict=False)):  # noqa: PLR2004
        caveats.append("root-test values increase with n: superexponential decay, no finite radius resolved")

    extrapolated = radius if math.isfinite(radius) else None
    logger.debug("estimated radius", center=str(exp.center), method=str(method), radius=extrapolated, used=len(upper))
    return RadiusEstimate(
        center=exp.center,
        root_test_values=root_values,
        combined_root_test_values=combined_roots,
        extrapolated_radius=extrapolated,
        method=method,
        caveats=caveats,
        noise_floor_order=noise_floor_order,
        N_used=len(upper),
        fit_residual=fit_residual,
    )
