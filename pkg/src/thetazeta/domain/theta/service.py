from __future__ import annotations

from collections.abc import Sequence
from typing import TYPE_CHECKING, Any

import mpmath as mp
from structlog import get_logger

from thetazeta.config.base import get_settings
from thetazeta.config.constants import CRITICAL_STRIP_HEIGHT, PROVEN_STRIP_HEIGHT
from thetazeta.domain.primes import prime_count
from thetazeta.domain.quadrature import (
    QuadratureResult,
    SmoothKernel,
    TailModel,
    exp_integral_e1,
    integrate_smooth_weighted,
    integrate_step_weighted_orders,
    li_offset,
    tail_bound,
)
from thetazeta.lib.exceptions import ConfigError, DomainError, NoiseFloorError, ThetaZetaError
from thetazeta.lib.numeric import as_float, to_complex, working_precision

from .radius import estimate_radius
from .schemas import RadiusMethod, ScanRow, TaylorExpansion

if TYPE_CHECKING:
    from thetazeta.domain.primes import PrimeTable
    from thetazeta.domain.quadrature import PrecisionConfig

__all__ = (
    "build_expansion",
    "phi_diff",
    "task1_scan",
    "theta",
    "theta_closed_form",
    "theta_derivative",
    "theta_orders",
)

logger = get_logger()

_REPORTED_MODELS = (TailModel.UNCONDITIONAL, TailModel.SQUARE_ROOT)


def phi_diff(t: Any, table: PrimeTable, cfg: PrecisionConfig) -> mp.mpf:
    """φ(t) = π(t) − Li(t)."""
    with working_precision(cfg):
        return prime_count(table, t) - li_offset(t, cfg)


def _primary_model() -> TailModel:
    label = get_settings().quadrature.TAIL_MODEL
    if label not in _REPORTED_MODELS:
        msg = f"primary tail model must be one of {[m.value for m in _REPORTED_MODELS]}, got {label!r}"
        raise ConfigError(msg)
    return TailModel(label)


def _check_half_plane(z: mp.mpc) -> None:
    if z.real <= 1:
        msg = f"theta integrals converge for Re z > 1 only, got z = {z}"
        raise DomainError(msg)


def _signed_order(
    z: mp.mpc,
    n: int,
    step: QuadratureResult,
    T: Any,
    cfg: PrecisionConfig,
) -> QuadratureResult:
    """(−1)ⁿ (step part − Li part) with the tails of both φ models attached."""
    li = integrate_smooth_weighted(SmoothKernel.LI, z, n, T, cfg)
    sign = -1 if n % 2 else 1
    with working_precision(cfg):
        value = sign * (step.value - li.value)
    tails = {model.value: tail_bound(model, z, n, T) for model in _REPORTED_MODELS}
    primary = _primary_model()
    numeric = step.error_bound + li.error_bound
    return QuadratureResult(
        value=value,
        error_bound=numeric + tails[primary],
        truncation_T=step.truncation_T,
        lower=li.lower,
        tail_model=primary,
        tail_bounds=tails,
        discretization_error=numeric,
    )


def theta(z: Any, table: PrimeTable, cfg: PrecisionConfig, T: Any = None) -> QuadratureResult:
    """θ(z) = ∫₂^∞ (π(t) − Li(t)) t^(−z−1) dt truncated at ``T`` (default: the table limit).

    ``error_bound`` is the numerical error plus the primary tail model
    (``QuadratureSettings.TAIL_MODEL``); ``tail_bounds`` carries both models
    and ``discretization_error`` the numerical part alone.
    """
    return theta_derivative(z, 0, table, cfg, T)


def theta_derivative(a: Any, n: int, table: PrimeTable, cfg: PrecisionConfig, T: Any = None) -> QuadratureResult:
    """θ⁽ⁿ⁾(a) = (−1)ⁿ ∫₂^∞ (π(t) − Li(t)) lnⁿt t^(−a−1) dt, Re a > 1."""
    T = table.limit if T is None else T
    a = to_complex(a)
    _check_half_plane(a)
    step = integrate_step_weighted_orders(table, a, n, T, cfg)[n]
    result = _signed_order(a, n, step, T, cfg)
    _warn_on_tail(n, result, get_settings().theta.TAIL_WARN_RATIO)
    return result


def _warn_on_tail(n: int, result: QuadratureResult, ratio: float) -> None:
    tail = result.tail_bounds.get(result.tail_model, 0.0)
    magnitude = as_float(result.value)
    if tail > ratio * magnitude:
        logger.warning(
            "tail bound dominates derivative",
            n=n,
            tail=tail,
            value=magnitude,
            ratio=tail / magnitude if magnitude else float("inf"),
        )


def theta_orders(a: Any, N: int, table: PrimeTable, cfg: PrecisionConfig, T: Any = None) -> list[QuadratureResult]:
    """θ⁽ⁿ⁾(a) for n = 0..N from one pass over the primes."""
    T = table.limit if T is None else T
    a = to_complex(a)
    _check_half_plane(a)
    steps = integrate_step_weighted_orders(table, a, N, T, cfg)
    return [_signed_order(a, n, step, T, cfg) for n, step in enumerate(steps)]


def build_expansion(
    a: Any,
    N: int,
    table: PrimeTable,
    cfg: PrecisionConfig,
    T: Any = None,
) -> TaylorExpansion:
    """Taylor coefficients c_n = θ⁽ⁿ⁾(a)/n! of θ at ``a`` for n = 0..N.

    Raises:
        ConfigError: ``N`` above ``cfg.max_order``.
        NoiseFloorError: |c_N| does not exceed its numerical error bound.
    """
    if N > cfg.max_order:
        msg = f"expansion order {N} exceeds max_order {cfg.max_order}"
        raise ConfigError(msg)
    T = table.limit if T is None else T
    orders = theta_orders(a, N, table, cfg, T)
    with working_precision(cfg):
        center = to_complex(a)
        factorials = [mp.factorial(n) for n in range(N + 1)]
        coefficients = [order.value / factorials[n] for n, order in enumerate(orders)]
        errors = [as_float(order.discretization_error / factorials[n]) for n, order in enumerate(orders)]
        tails = [as_float(order.tail_bounds[order.tail_model] / factorials[n]) for n, order in enumerate(orders)]
        if abs(coefficients[N]) <= errors[N]:
            msg = f"c_{N} = {mp.nstr(abs(coefficients[N]), 5)} at a = {center} is below its error bound {errors[N]:.3g}"
            raise NoiseFloorError(msg)
    logger.info("built theta expansion", center=str(center), N=N, T=str(T))
    return TaylorExpansion(
        center=center,
        coefficients=coefficients,
        coeff_error_bounds=errors,
        coeff_tail_bounds=tails,
        N=N,
        truncation_T=mp.mpf(T),
        prime_limit=table.limit,
        digits=cfg.digits,
    )


def theta_closed_form(z: Any, table: PrimeTable, cfg: PrecisionConfig, T: Any = None) -> mp.mpc:
    """θ truncated at T in closed form.

    Integrating the step part per prime and the Li part by parts gives::

        z·θ_T(z) = P_T(z) − φ(T)T^(−z) − E₁((z−1)ln 2) + E₁((z−1)ln T)

    with P_T the prime zeta sum over p ≤ T.
    """
    T = table.limit if T is None else T
    with working_precision(cfg):
        z = to_complex(z)
        _check_half_plane(z)
        T = mp.mpf(T)
        primes = table.primes_upto(int(mp.floor(T)))
        prime_sum = mp.fsum(mp.power(p, -z) for p in primes.tolist())
        boundary = phi_diff(T, table, cfg) * mp.power(T, -z)
        w = z - 1
        value = prime_sum - boundary - exp_integral_e1(w * mp.ln2, cfg) + exp_integral_e1(w * mp.log(T), cfg)
        return value / z


def task1_scan(
    epsilon: float,
    b_values: Sequence[float],
    N: int,
    table: PrimeTable,
    cfg: PrecisionConfig,
    T: Any = None,
    method: RadiusMethod | str = RadiusMethod.MAX_TAIL_ROOT,
) -> list[ScanRow]:
    """Radius estimates at a = 1 + ε + ib for every b, in input order.

    A failing point is recorded with its error and the scan continues. The
    default estimator is the one that stays put as ``T`` grows; calibration
    on known poles uses :attr:`RadiusMethod.REGRESSION`.
    """
    if epsilon <= 0:
        msg = f"epsilon must be positive, got {epsilon}"
        raise DomainError(msg)
    method = RadiusMethod(method)
    rows = []
    for b in b_values:
        center = mp.mpc(1 + mp.mpf(epsilon), b)
        estimate = None
        error = None
        try:
            estimate = estimate_radius(build_expansion(center, N, table, cfg, T), method)
        except ThetaZetaError as e:
            logger.warning("scan point failed", b=b, error=str(e))
            error = f"{type(e).__name__}: {e}"
        rows.append(
            ScanRow(
                b=float(b),
                epsilon=float(epsilon),
                estimate=estimate,
                error=error,
                inside_3pi=abs(b) < PROVEN_STRIP_HEIGHT * float(mp.pi),
                inside_4pi=abs(b) < CRITICAL_STRIP_HEIGHT * float(mp.pi),
            ),
        )
    return rows
