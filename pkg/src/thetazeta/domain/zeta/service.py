from __future__ import annotations

from typing import TYPE_CHECKING, Any

import mpmath as mp
from structlog import get_logger

from thetazeta.config.base import get_settings
from thetazeta.config.constants import (
    CRITICAL_STRIP_HEIGHT,
    LISTED_ZERO_ORDINATES,
    POLE_RADIUS,
    ZERO_FLAG_DISTANCE,
)
from thetazeta.domain.quadrature import SmoothKernel, TailModel, integrate_smooth_weighted, tail_bound
from thetazeta.domain.quadrature.special import log_power_antiderivative
from thetazeta.lib.exceptions import DomainError, NearZeroError, NotAZeroError, PoleError
from thetazeta.lib.numeric import as_float, machine_eps, to_complex, working_precision

from .schemas import LogDerivDecomposition, ZeroRefinement, ZetaEvaluation, ZetaMethod

if TYPE_CHECKING:
    from thetazeta.domain.primes import PrimeTable
    from thetazeta.domain.quadrature import PrecisionConfig

__all__ = (
    "difference_step",
    "euler_product",
    "integral_truncation",
    "log_deriv_decomposition",
    "printed_kernel_offset",
    "psi",
    "refine_listed_zeros",
    "refine_zero",
    "zeta",
    "zeta_derivative",
)

logger = get_logger()

_INTEGRAL_MIN_T = 64


def _check_domain(z: mp.mpc) -> None:
    if abs(z - 1) < POLE_RADIUS:
        msg = f"zeta has a pole at z = 1, got z = {z}"
        raise PoleError(msg)
    if z.real <= 0:
        msg = f"zeta is evaluated for Re z > 0 only, got z = {z}"
        raise DomainError(msg)


def _euler_maclaurin(s: mp.mpc, *, derivative: bool = False) -> tuple[Any, Any, int]:
    """ζ(s) (or ζ′(s)) as a partial sum to M − 1 plus Euler-Maclaurin terms at M.

    Returns:
        value, remainder bound and M.
    """
    settings = get_settings().zeta
    order = settings.EM_ORDER
    M = int(mp.ceil(abs(s.imag))) + settings.EM_EXTRA_TERMS
    log_M = mp.log(M)
    head = M ** (-s)
    if derivative:
        value = -mp.fsum(mp.log(k) * k ** (-s) for k in range(2, M))
        value += -log_M * M * head / (s - 1) - M * head / (s - 1) ** 2 - log_M * head / 2
    else:
        value = mp.fsum(k ** (-s) for k in range(1, M))
        value += M * head / (s - 1) + head / 2
    rising: Any = s
    rising_log_derivative: Any = 1 / s
    power = head / M
    for j in range(1, order + 1):
        coefficient = mp.bernoulli(2 * j) / mp.factorial(2 * j)
        if derivative:
            value += coefficient * power * rising * (rising_log_derivative - log_M)
        else:
            value += coefficient * power * rising
        for i in (2 * j - 1, 2 * j):
            rising *= s + i
            rising_log_derivative += 1 / (s + i)
        power /= M * M
    sigma = s.real
    bound = abs(
        rising * (s + 2 * order + 1) * mp.bernoulli(2 * order + 2) / mp.factorial(2 * order + 2),
    ) * M ** (-sigma - 2 * order - 1) / (sigma + 2 * order + 1)
    if derivative:
        bound *= log_M + abs(rising_log_derivative) + 1
    return value, bound, M


def integral_truncation(z: Any, cfg: PrecisionConfig) -> int:
    """Integer truncation K for ∫₁^K (1/2 − {t}) t^(−z−1) dt.

    K is the smallest integer whose tail bound |z||z+1| K^(−σ−1)/(8(σ+1)) meets
    ``cfg.abs_tol``, clamped to [64, ``ZetaSettings.INTEGRAL_MAX_T``].
    """
    z = to_complex(z)
    sigma = z.real
    target = abs(z) * abs(z + 1) / (8 * (sigma + 1) * cfg.abs_tol)
    K = int(mp.ceil(target ** (1 / (sigma + 1))))
    return min(max(K, _INTEGRAL_MIN_T), get_settings().zeta.INTEGRAL_MAX_T)


def _fractional_integral(z: mp.mpc, K: int, cfg: PrecisionConfig) -> tuple[Any, float]:
    """∫₁^K (1/2 − {t}) t^(−z−1) dt with its error including the tail past K."""
    result = integrate_smooth_weighted(SmoothKernel.FRACTIONAL_PART_KERNEL, z, 0, K, cfg)
    return result.value, result.error_bound + result.tail_bounds[TailModel.FRACTIONAL_PART]


def zeta(z: Any, cfg: PrecisionConfig, method: ZetaMethod | str = ZetaMethod.DIRICHLET_EM) -> ZetaEvaluation:
    """Riemann zeta on Re z > 0.

    Raises:
        PoleError: ``z`` within 1e-9 of 1.
        DomainError: ``Re z <= 0``.
    """
    method = ZetaMethod(method)
    with working_precision(cfg):
        z = to_complex(z)
        _check_domain(z)
        if method is ZetaMethod.DIRICHLET_EM:
            value, bound, terms = _euler_maclaurin(z)
            error_bound = as_float(bound + machine_eps() * terms * abs(value))
        else:
            terms = integral_truncation(z, cfg)
            integral, integral_bound = _fractional_integral(z, terms, cfg)
            value = 1 / (z - 1) + mp.mpf(0.5) + z * integral
            error_bound = as_float(abs(z)) * integral_bound + as_float(machine_eps() * abs(value))
        return ZetaEvaluation(z=z, value=value, method=method, error_bound=error_bound, terms=terms)


def zeta_derivative(z: Any, cfg: PrecisionConfig) -> mp.mpc:
    """ζ′(z) from the term-differentiated Euler-Maclaurin series."""
    with working_precision(cfg):
        z = to_complex(z)
        _check_domain(z)
        value, _, _ = _euler_maclaurin(z, derivative=True)
        return value


def _psi_truncated(z: mp.mpc, K: int, cfg: PrecisionConfig) -> tuple[Any, float]:
    integral, integral_bound = _fractional_integral(z, K, cfg)
    value = (z - 1) * (mp.mpf(0.5) + z * integral)
    return value, as_float(abs((z - 1) * z)) * integral_bound


def psi(z: Any, cfg: PrecisionConfig) -> mp.mpc:
    """ψ(z) = (z−1)[1/2 + z∫₁^∞ (1/2 − {t}) t^(−z−1) dt], so (z−1)ζ(z) = 1 + ψ(z) and ψ(1) = 0."""
    with working_precision(cfg):
        z = to_complex(z)
        if z.real <= 0:
            msg = f"psi is evaluated for Re z > 0 only, got z = {z}"
            raise DomainError(msg)
        value, _ = _psi_truncated(z, integral_truncation(z, cfg), cfg)
        return value


def difference_step(cfg: PrecisionConfig) -> mp.mpf:
    """Central-difference step min(1e-5, 10^(−digits/3))."""
    return min(mp.mpf("1e-5"), mp.mpf(10) ** (-mp.mpf(cfg.digits) / 3))


def log_deriv_decomposition(z: Any, cfg: PrecisionConfig) -> LogDerivDecomposition:
    """ζ′/ζ = −1/(z−1) + F with F = ψ′/((z−1)ζ) and ψ′ by central differences.

    Both difference points share one truncation of the ψ integral, so its
    tail varies smoothly across the stencil.

    Raises:
        DomainError: ``Re z <= 1/2`` or ``|Im z| >= 4π``.
        PoleError: ``z`` at the pole.
        NearZeroError: ``|ζ(z)|`` below ``ZetaSettings.NEAR_ZERO``.
    """
    with working_precision(cfg):
        z = to_complex(z)
        if z.real <= mp.mpf(0.5) or abs(z.imag) >= CRITICAL_STRIP_HEIGHT * mp.pi:
            msg = f"decomposition needs Re z > 1/2 and |Im z| < {CRITICAL_STRIP_HEIGHT}*pi, got z = {z}"
            raise DomainError(msg)
        _check_domain(z)
        zeta_value, zeta_bound, _ = _euler_maclaurin(z)
        if abs(zeta_value) < get_settings().zeta.NEAR_ZERO:
            msg = f"|zeta(z)| = {mp.nstr(abs(zeta_value), 5)} at z = {z} is below the near-zero threshold"
            raise NearZeroError(msg)
        K = integral_truncation(z, cfg)
        h = difference_step(cfg)
        psi_value, _ = _psi_truncated(z, K, cfg)
        upper, upper_bound = _psi_truncated(z + h, K, cfg)
        lower, lower_bound = _psi_truncated(z - h, K, cfg)
        derivative = (upper - lower) / (2 * h)
        scale = (z - 1) * zeta_value
        F_value = derivative / scale
        derivative_log, _, _ = _euler_maclaurin(z, derivative=True)

        # the truncation error of psi is smooth in z; bound its z-derivative
        tail_slope = abs(2 * z - 1) * tail_bound(TailModel.FRACTIONAL_PART, z, 0, K) + abs(
            (z - 1) * z,
        ) * tail_bound(TailModel.FRACTIONAL_PART, z, 1, K)
        rounding = machine_eps() * K * (abs(upper) + abs(lower) + 1) / h
        error = (tail_slope + rounding + h**2) / abs(scale) + abs(F_value) * zeta_bound / abs(zeta_value)
        logger.debug(
            "log-derivative decomposition",
            z=str(z),
            K=K,
            step=float(h),
            psi_bounds=max(upper_bound, lower_bound),
        )
        return LogDerivDecomposition(
            z=z,
            pole_part=-1 / (z - 1),
            F_value=F_value,
            psi_value=psi_value,
            error_bound=as_float(error),
            log_derivative=derivative_log / zeta_value,
        )


def _abs_zeta_squared(y: Any) -> Any:
    value, _, _ = _euler_maclaurin(mp.mpc(mp.mpf(0.5), y))
    return value.real**2 + value.imag**2


def refine_zero(y0: Any, cfg: PrecisionConfig) -> mp.mpf:
    """Ordinate of the zero of ζ(1/2 + iy) nearest ``y0``.

    Golden-section search for the minimum of |ζ(1/2 + iy)|² on
    [y0 − 0.5, y0 + 0.5] until the bracket is shorter than
    ``ZetaSettings.ZERO_TOL``.

    Raises:
        NotAZeroError: |ζ| at the minimum is not below ``ZetaSettings.ZERO_ACCEPT``.
    """
    settings = get_settings().zeta
    with working_precision(cfg):
        y0 = mp.mpf(y0)
        a = y0 - settings.ZERO_BRACKET
        b = y0 + settings.ZERO_BRACKET
        golden = (mp.sqrt(5) - 1) / 2
        c = b - golden * (b - a)
        d = a + golden * (b - a)
        fc, fd = _abs_zeta_squared(c), _abs_zeta_squared(d)
        iterations = 0
        while b - a > settings.ZERO_TOL:
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - golden * (b - a)
                fc = _abs_zeta_squared(c)
            else:
                a, c, fc = c, d, fd
                d = a + golden * (b - a)
                fd = _abs_zeta_squared(d)
            iterations += 1
        y = (a + b) / 2
        magnitude = mp.sqrt(_abs_zeta_squared(y))
        logger.debug("refined zero ordinate", start=float(y0), ordinate=float(y), iterations=iterations)
        if magnitude >= settings.ZERO_ACCEPT:
            msg = (
                f"no zero of zeta(1/2 + iy) near y = {float(y0)}: "
                f"minimum |zeta| = {mp.nstr(magnitude, 5)} at y = {float(y)}"
            )
            raise NotAZeroError(msg)
        return y


def refine_listed_zeros(max_im: float, cfg: PrecisionConfig) -> list[ZeroRefinement]:
    """Refine every listed zero ordinate up to ``max_im``.

    An entry is flagged when it lies more than 0.01 from its refined value, or
    when no zero is found near it.
    """
    rows = []
    for listed in LISTED_ZERO_ORDINATES:
        if listed > max_im:
            continue
        try:
            refined = refine_zero(listed, cfg)
        except NotAZeroError as e:
            logger.warning("listed ordinate is not near a zero", listed=listed, detail=str(e))
            rows.append(ZeroRefinement(listed=listed, refined=None, abs_zeta=None, flagged=True))
            continue
        with working_precision(cfg):
            magnitude = mp.sqrt(_abs_zeta_squared(refined))
        flagged = abs(refined - listed) > ZERO_FLAG_DISTANCE
        if flagged:
            logger.info("listed ordinate disagrees with refinement", listed=listed, refined=float(refined))
        rows.append(ZeroRefinement(listed=listed, refined=refined, abs_zeta=magnitude, flagged=flagged))
    return rows


def euler_product(z: Any, table: PrimeTable, cfg: PrecisionConfig, limit: int | None = None) -> mp.mpc:
    """Π_{p ≤ limit} (1 − p^(−z))^(−1), truncated at the table limit by default.

    Raises:
        DomainError: ``Re z <= 1``.
    """
    with working_precision(cfg):
        z = to_complex(z)
        if z.real <= 1:
            msg = f"the Euler product converges for Re z > 1 only, got z = {z}"
            raise DomainError(msg)
        primes = table.primes_upto(limit or table.limit)
        return mp.mpc(1 / mp.fprod(1 - mp.power(p, -z) for p in primes.tolist()))


def printed_kernel_offset(z: Any, cfg: PrecisionConfig) -> mp.mpc:
    """The integral representation with kernel 1 − {t} in place of 1/2 − {t}, minus ζ(z).

    ζ is taken from the Euler-Maclaurin series. The extra 1/2 in the kernel
    integrates to z·∫₁^K t^(−z−1)/2 dt = (1 − K^(−z))/2, so the result tends
    to exactly 1/2.
    """
    with working_precision(cfg):
        z = to_complex(z)
        _check_domain(z)
        K = integral_truncation(z, cfg)
        integral, _ = _fractional_integral(z, K, cfg)
        constant = (log_power_antiderivative(0, z, K) - log_power_antiderivative(0, z, 1)) / 2
        printed = 1 / (z - 1) + mp.mpf(0.5) + z * (integral + constant)
        reference, _, _ = _euler_maclaurin(z)
        return printed - reference
