from __future__ import annotations

from collections.abc import Iterable
from typing import TYPE_CHECKING, Any

import mpmath as mp
from structlog import get_logger

from thetazeta.config.constants import LOG_SERIES_CUTOFF, POLE_RADIUS
from thetazeta.domain.quadrature import (
    QuadratureResult,
    TailModel,
    entire_pole_combination,
    integrate_li_polynomial,
    moment_rounding,
    prime_log_moments,
    tail_bound,
)
from thetazeta.domain.theta import phi_diff, theta_orders
from thetazeta.domain.zeta import difference_step, log_deriv_decomposition, zeta
from thetazeta.lib.exceptions import DomainError, OutOfRangeError, PoleError
from thetazeta.lib.numeric import as_float, machine_eps, to_complex, working_precision

from .schemas import IdentityId, IdentityReport

if TYPE_CHECKING:
    from thetazeta.domain.primes import PrimeTable
    from thetazeta.domain.quadrature import PrecisionConfig

__all__ = (
    "PHI_ORIENTATION",
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

logger = get_logger()

PHI_ORIENTATION = "theta + z*theta' = int_2^T [t^(-z-1) - z t^(-z-1) ln t] phi(t) dt"


def _limit(table: PrimeTable, limit: int | None) -> int:
    limit = table.limit if limit is None else limit
    if limit > table.limit:
        msg = f"prime limit {limit} exceeds the prime table limit {table.limit}"
        raise OutOfRangeError(msg)
    return limit


def _check_convergent(z: mp.mpc, edge: Any, name: str) -> None:
    if z.real <= edge:
        msg = f"{name} converges for Re z > {edge}, got z = {z}"
        raise DomainError(msg)


def _prime_sum(z: Any, table: PrimeTable, cfg: PrecisionConfig, limit: int | None, order: int) -> QuadratureResult:
    with working_precision(cfg):
        z = to_complex(z)
        _check_convergent(z, 1, "the prime sum")
        L = _limit(table, limit)
        primes = table.primes_upto(L)
        moments = prime_log_moments(primes, z, order)
        tail = tail_bound(TailModel.PRIME_SUM, z, order, L)
        rounding = moment_rounding(primes, z, order)[order]
    return QuadratureResult(
        value=moments[order],
        error_bound=rounding + tail,
        truncation_T=L,
        tail_model=TailModel.PRIME_SUM,
        tail_bounds={TailModel.PRIME_SUM: tail},
    )


def prime_zeta(z: Any, table: PrimeTable, cfg: PrecisionConfig, limit: int | None = None) -> QuadratureResult:
    """P(z) = Σₚ p^(−z) over p ≤ limit, with the tail limit^(1−σ)/(σ−1) in the error bound.

    Raises:
        DomainError: ``Re z <= 1``.
        OutOfRangeError: ``limit`` beyond the table.
    """
    return _prime_sum(z, table, cfg, limit, 0)


def prime_log_sum(z: Any, table: PrimeTable, cfg: PrecisionConfig, limit: int | None = None) -> QuadratureResult:
    """Σₚ p^(−z) ln p = −P′(z), tail bounded by ∫_L^∞ t^(−σ) ln t dt."""
    return _prime_sum(z, table, cfg, limit, 1)


def f_correction(z: Any, table: PrimeTable, cfg: PrecisionConfig, limit: int | None = None) -> QuadratureResult:
    """f(z) = Σₚ Σ_(k≥2) p^(−kz)/k = Σₚ [−ln(1 − p^(−z)) − p^(−z)] on Re z > 1/2.

    Terms with |p^(−z)| below ``LOG_SERIES_CUTOFF`` are summed from the power series. The
    tail past L is bounded by L^(1−2σ)/((2σ−1)·2(1 − L^(−σ))).

    Raises:
        DomainError: ``Re z <= 1/2``.
    """
    with working_precision(cfg):
        z = to_complex(z)
        _check_convergent(z, mp.mpf(0.5), "f")
        L = _limit(table, limit)
        eps = machine_eps()
        primes = table.primes_upto(L)
        total = mp.mpc(0)
        for p in primes.tolist():
            x = mp.power(p, -z)
            if abs(x) >= LOG_SERIES_CUTOFF:
                total += -mp.log(1 - x) - x
                continue
            power = x * x
            floor = eps * abs(power)
            k = 2
            while abs(power) > floor:
                total += power / k
                power *= x
                k += 1
        sigma = z.real
        tail = L ** (1 - 2 * sigma) / ((2 * sigma - 1) * 2 * (1 - L ** (-sigma)))
        rounding = eps * len(primes) * (abs(total) + 1)
    return QuadratureResult(
        value=total,
        error_bound=as_float(tail + rounding),
        truncation_T=L,
        tail_model=TailModel.PRIME_SUM,
        tail_bounds={TailModel.PRIME_SUM: as_float(tail)},
    )


def f_correction_derivative(
    z: Any,
    table: PrimeTable,
    cfg: PrecisionConfig,
    limit: int | None = None,
) -> mp.mpc:
    """f′(z) by a central difference of :func:`f_correction` with step min(1e-5, 10^(−digits/3))."""
    with working_precision(cfg):
        z = to_complex(z)
        h = difference_step(cfg)
        upper = f_correction(z + h, table, cfg, limit).value
        lower = f_correction(z - h, table, cfg, limit).value
        return (upper - lower) / (2 * h)


def check_eq5(z: Any, table: PrimeTable, cfg: PrecisionConfig, limit: int | None = None) -> IdentityReport:
    """Residual of exp P(z) = ζ(z)·exp(−f(z)) with both sums truncated at the prime limit."""
    with working_precision(cfg):
        z = to_complex(z)
        P = prime_zeta(z, table, cfg, limit)
        f = f_correction(z, table, cfg, limit)
        zeta_value = zeta(z, cfg)
        lhs = mp.exp(P.value)
        factor = mp.exp(-f.value)
        rhs = zeta_value.value * factor
        bound = (
            abs(lhs) * mp.expm1(P.error_bound)
            + abs(rhs) * mp.expm1(f.error_bound)
            + zeta_value.error_bound * abs(factor)
        )
        return IdentityReport(
            identity_id=IdentityId.EQ5,
            z=z,
            lhs=lhs,
            rhs=rhs,
            residual=as_float(lhs - rhs),
            prime_limit=int(P.truncation_T),
            truncation_bound=as_float(bound),
            diagnostics={"prime_zeta_tail": P.error_bound, "f_tail": f.error_bound},
        )


def phi_cap(z: Any, table: PrimeTable, cfg: PrecisionConfig, T: Any = None) -> QuadratureResult:
    """Φ(z) = θ(z) + zθ′(z) = ∫₂^T [t^(−z−1) − z t^(−z−1) ln t] φ(t) dt.

    The weight is the derivative of h(t) = t^(−z) ln t, so the step part is
    exactly π(T)h(T) − Σ_{p≤T} h(p); the Li part is one quadrature of the
    same weight. The result is that direct route; ``discretization_error``
    holds its distance to θ + zθ′ from the θ module.

    Raises:
        DomainError: ``Re z <= 1``.
        OutOfRangeError: ``T`` beyond the table.
    """
    T = table.limit if T is None else T
    with working_precision(cfg):
        z = to_complex(z)
        _check_convergent(z, 1, "Phi")
        T = mp.mpf(T)
        if T > table.limit:
            msg = f"truncation T = {T} exceeds the prime table limit {table.limit}"
            raise OutOfRangeError(msg)
        primes = table.primes_upto(int(mp.floor(T)))
        moments = prime_log_moments(primes, z, 1)
        log_T = mp.log(T)
        step = len(primes) * mp.exp(-z * log_T) * log_T - moments[1]
        li = integrate_li_polynomial(z, [1, -z], T, cfg)
        value = step - li.value
        numeric = li.error_bound + moment_rounding(primes, z, 1)[1] + as_float(machine_eps() * abs(step))

        theta_value, theta_prime = theta_orders(z, 1, table, cfg, T)
        cross = theta_value.value + z * theta_prime.value
        residual = as_float(value - cross)
    tails = {
        model: theta_value.tail_bounds[model] + as_float(abs(z)) * theta_prime.tail_bounds[model]
        for model in theta_value.tail_bounds
    }
    primary = theta_value.tail_model
    logger.debug("computed Phi", z=str(z), T=str(T), route_residual=residual)
    return QuadratureResult(
        value=value,
        error_bound=numeric + tails[primary],
        truncation_T=T,
        lower=li.lower,
        tail_model=primary,
        tail_bounds=tails,
        discretization_error=residual,
    )


def _check_pole(z: mp.mpc) -> None:
    if abs(z - 1) < POLE_RADIUS:
        msg = f"identity has a pole at z = 1, got z = {z}"
        raise PoleError(msg)


def check_eq6(
    z: Any,
    table: PrimeTable,
    cfg: PrecisionConfig,
    T: Any = None,
    limit: int | None = None,
) -> IdentityReport:
    """Σₚ p^(−z) ln p = 2^(1−z)/(z−1) − Φ(z).

    With φ(2) = 1 and π jumping by 1 at t = 2, the boundary term
    −φ(2)ln2/2^z is cancelled by the jump, leaving no constant. Diagnostics
    carry the residuals of the form with the constant kept, in both
    orientations of the integral, and of the exact truncated identity

        Σ_{p≤T} p^(−z) ln p = (2^(1−z) − T^(1−z))/(z−1) + T^(−z) ln T·φ(T) − Φ_T(z)
    """
    with working_precision(cfg):
        z = to_complex(z)
        _check_pole(z)
        _check_convergent(z, 1, "the prime log sum")
        T = table.limit if T is None else T
        S = prime_log_sum(z, table, cfg, limit)
        phi = phi_cap(z, table, cfg, T)
        T = phi.truncation_T
        w = z - 1
        leading = mp.power(2, -w) / w
        constant = mp.ln2 * mp.power(2, -z)
        phi_two = phi_diff(2, table, cfg)
        rhs = leading - phi.value

        truncated_sum = prime_log_sum(z, table, cfg, int(mp.floor(T))).value
        log_T = mp.log(T)
        truncated_rhs = (
            (mp.power(2, -w) - mp.power(T, -w)) / w + mp.exp(-z * log_T) * log_T * phi_diff(T, table, cfg) - phi.value
        )
        printed_negated = leading - phi_two * constant - phi.value
        printed_theta = leading - phi_two * constant + phi.value
        return IdentityReport(
            identity_id=IdentityId.EQ6,
            z=z,
            lhs=S.value,
            rhs=rhs,
            residual=as_float(S.value - rhs),
            prime_limit=int(S.truncation_T),
            truncation_bound=S.error_bound + phi.error_bound,
            integral_T=T,
            orientation=PHI_ORIENTATION,
            diagnostics={
                "phi_at_two": phi_two,
                "printed_residual_negated_integrand": as_float(S.value - printed_negated),
                "printed_residual_theta_orientation": as_float(S.value - printed_theta),
                "truncated_identity_residual": as_float(truncated_sum - truncated_rhs),
                "phi_route_residual": phi.discretization_error,
            },
        )


def check_eq7_holomorphy(
    z_grid: Iterable[Any],
    table: PrimeTable,
    cfg: PrecisionConfig,
    T: Any = None,
    limit: int | None = None,
) -> list[IdentityReport]:
    """−Φ(z) = (1 − e^(−(z−1)ln 2))/(z−1) + f′(z) − F(z) at every grid point.

    The left side is the integral with integrand [z t^(−z−1) ln t − t^(−z−1)]φ(t).
    Diagnostics carry the residual of the right side with the extra
    +φ(2)ln2/2^z term and the gap between the entire term at z = 1 and ln 2.

    Prime sums run to ``limit`` (default: the table limit), the integral to
    ``T`` (default: ``limit``); reports carry the limit actually summed.
    """
    L = _limit(table, limit)
    T = L if T is None else T
    with working_precision(cfg):
        removable = as_float(entire_pole_combination(1, cfg) - mp.ln2)
    reports = []
    for point in z_grid:
        with working_precision(cfg):
            z = to_complex(point)
            _check_pole(z)
            _check_convergent(z, 1, "Phi")
            phi = phi_cap(z, table, cfg, T)
            entire = entire_pole_combination(z, cfg)
            f_prime = f_correction_derivative(z, table, cfg, L)
            decomposition = log_deriv_decomposition(z, cfg)
            lhs = -phi.value
            rhs = entire + f_prime - decomposition.F_value
            printed = rhs + phi_diff(2, table, cfg) * mp.ln2 * mp.power(2, -z)
            reports.append(
                IdentityReport(
                    identity_id=IdentityId.EQ7_HOLOMORPHY,
                    z=z,
                    lhs=lhs,
                    rhs=rhs,
                    residual=as_float(lhs - rhs),
                    prime_limit=L,
                    truncation_bound=phi.error_bound + decomposition.error_bound,
                    integral_T=phi.truncation_T,
                    orientation="-(" + PHI_ORIENTATION + ")",
                    diagnostics={
                        "printed_residual": as_float(lhs - printed),
                        "entire_term_at_one_minus_ln2": removable,
                        "F_value": decomposition.F_value,
                        "f_prime": f_prime,
                    },
                ),
            )
    return reports


def default_grid(identity: IdentityId | str) -> list[mp.mpc]:
    """Grid used when none is given: 5×5 on [1.5, 3]×[−2, 2] for eq5, three points otherwise."""
    identity = IdentityId(identity)
    if identity is IdentityId.EQ5:
        return [mp.mpc(1.5 + 0.375 * i, -2 + j) for i in range(5) for j in range(5)]
    return [mp.mpc(2, 0), mp.mpc(1.5, 2), mp.mpc(3, 1)]
