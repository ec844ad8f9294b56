"""Weighted integrals ∫ f(t)·lnⁿt·t^(−z−1) dt.

Step functions are integrated exactly through the closed-form antiderivative
of lnⁿt·t^(−z−1). Smooth kernels are integrated in u = ln t, where the
logarithmic weight becomes polynomial, with Gauss-Legendre panels short
enough that e^(−zu) turns through at most half a period per panel.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from math import log, log2
from typing import TYPE_CHECKING, Any

import mpmath as mp
import numpy as np
import numpy.typing as npt
from structlog import get_logger

from thetazeta.config.base import get_settings
from thetazeta.config.constants import (
    LI_DENSITY_CONSTANT,
    MIN_TAIL_T,
    STEP_DENSITY_CONSTANT,
    UNCONDITIONAL_DECAY,
    UNCONDITIONAL_EXPONENT,
)
from thetazeta.lib.exceptions import ConfigError, DivergenceError, DomainError, OutOfRangeError
from thetazeta.lib.numeric import as_float, machine_eps, to_complex, working_precision

from .schemas import QuadratureResult, SmoothKernel, TailModel
from .special import li_of_exp, log_moment_tail, log_power_antiderivative, log_power_coefficients

if TYPE_CHECKING:
    from thetazeta.domain.primes import PrimeTable

    from .schemas import PrecisionConfig

__all__ = (
    "integrate_li_polynomial",
    "integrate_smooth_weighted",
    "integrate_step_weighted",
    "integrate_step_weighted_orders",
    "moment_rounding",
    "prime_log_moments",
    "tail_bound",
)

logger = get_logger()

_PHI_MODELS = frozenset({TailModel.UNCONDITIONAL, TailModel.SQUARE_ROOT})


def _check_order(n: int, cfg: PrecisionConfig) -> None:
    if n < 0:
        msg = f"order must be nonnegative, got {n}"
        raise DomainError(msg)
    if n > cfg.max_order:
        msg = f"order {n} exceeds max_order {cfg.max_order}"
        raise ConfigError(msg)


def _check_finite(T: mp.mpf) -> None:
    if not mp.isfinite(T):
        msg = "truncation T must be finite; tails are bounded separately"
        raise DivergenceError(msg)


def _narrow(z: mp.mpc) -> Any:
    """Drop a zero imaginary part so real arguments use real arithmetic."""
    return z.real if z.imag == 0 else z


def _panel_edges(lo: Any, hi: Any, width: Any) -> list[Any]:
    count = max(1, int(mp.ceil((hi - lo) / width)))
    step = (hi - lo) / count
    edges = [lo + k * step for k in range(count)]
    edges.append(hi)
    return edges


def _panel_width(z: mp.mpc) -> Any:
    width = mp.mpf(get_settings().quadrature.PANEL_WIDTH)
    if z.imag != 0:
        width = min(width, mp.pi / abs(z.imag))
    return width


def _gauss_legendre(integrand: Callable[[Any], Any], edges: Sequence[Any]) -> tuple[Any, Any, Any]:
    """Sum of per-panel quadratures: (value, summed error estimate, Σ|panel values|)."""
    value: Any = mp.mpf(0)
    error = mp.mpf(0)
    magnitude = mp.mpf(0)
    for a, b in zip(edges[:-1], edges[1:], strict=True):
        part, part_error = mp.quad(integrand, [a, b], method="gauss-legendre", error=True)
        value += part
        error += part_error
        magnitude += abs(part)
    return value, error, magnitude


def _float_moments(primes: npt.NDArray[np.int64], w: Any, N: int) -> list[Any]:
    logs = np.log(primes.astype(np.float64))
    w_float = complex(w)
    term = np.exp(-w_float.real * logs) if w_float.imag == 0 else np.exp(-w_float * logs)
    sums: list[Any] = []
    for _ in range(N + 1):
        total = term.sum()
        sums.append(mp.mpf(float(total)) if w_float.imag == 0 else mp.mpc(complex(total)))
        term = term * logs
    return sums


def _exact_split(primes: npt.NDArray[np.int64]) -> int:
    return int(np.searchsorted(primes, get_settings().quadrature.EXACT_PRIME_CUTOFF, side="right"))


def prime_log_moments(primes: npt.NDArray[np.int64], w: Any, N: int) -> list[Any]:
    """Σ_p p^(−w) ln^j p for j = 0..N.

    Primes up to ``QuadratureSettings.EXACT_PRIME_CUTOFF`` are summed at
    working precision, the rest as float64 arrays; :func:`moment_rounding`
    bounds the error of both parts.
    """
    split = _exact_split(primes)
    sums: list[Any] = [mp.mpf(0)] * (N + 1)
    for p in primes[:split].tolist():
        lp = mp.log(p)
        term = mp.exp(-w * lp)
        for j in range(N + 1):
            sums[j] += term
            term *= lp
    if split < len(primes):
        for j, part in enumerate(_float_moments(primes[split:], w, N)):
            sums[j] += part
    return sums


def moment_rounding(primes: npt.NDArray[np.int64], w: Any, N: int) -> list[float]:
    """Rounding bound of every sum returned by :func:`prime_log_moments`."""
    if len(primes) == 0:
        return [0.0] * (N + 1)
    split = _exact_split(primes)
    logs = np.log(primes.astype(np.float64))
    weights = np.exp(-float(mp.re(w)) * logs)
    exact_factor = float(machine_eps()) * (split + N + 2)
    float_count = len(primes) - split
    float_factor = 0.0
    if float_count:
        spread = abs(complex(w)) * float(logs[-1]) + N + log2(float_count) + 16
        float_factor = float(np.finfo(np.float64).eps) * spread
    bounds = []
    for _ in range(N + 1):
        bounds.append(exact_factor * float(weights[:split].sum()) + float_factor * float(weights[split:].sum()))
        weights = weights * logs
    return bounds


def integrate_step_weighted_orders(
    table: PrimeTable,
    z: Any,
    N: int,
    T: Any,
    cfg: PrecisionConfig,
) -> list[QuadratureResult]:
    """∫₂^T π(t)·lnⁿt·t^(−z−1) dt for every n = 0..N from one pass over the primes.

    Each prime contributes ∫_p^T lnⁿt·t^(−z−1) dt, so with
    D_j = Σ_{p≤T} [p^(−z) ln^j p − T^(−z) ln^j T]::

        I_n = Σ_k n!/((n−k)! z^(k+1)) D_(n−k)

    The error bound covers rounding only.

    Raises:
        OutOfRangeError: ``T`` beyond the table limit.
        DomainError: ``Re z <= 0``.
        ConfigError: ``N`` above ``cfg.max_order``.
    """
    _check_order(N, cfg)
    with working_precision(cfg):
        z = to_complex(z)
        T = mp.mpf(T)
        if T > table.limit:
            msg = f"truncation T = {T} exceeds the prime table limit {table.limit}"
            raise OutOfRangeError(msg)
        if z.real <= 0:
            msg = f"step integral needs Re z > 0, got z = {z}"
            raise DomainError(msg)
        w = _narrow(z)
        primes = table.primes_upto(int(mp.floor(T))) if T >= 2 else np.empty(0, dtype=np.int64)  # noqa: PLR2004
        count = len(primes)
        if count == 0:
            zero = mp.mpc(0)
            return [QuadratureResult(value=zero, error_bound=0.0, truncation_T=T) for _ in range(N + 1)]

        sums = prime_log_moments(primes, w, N)
        log_T = mp.log(T)
        edge = count * mp.exp(-w * log_T)
        differences = []
        for j in range(N + 1):
            differences.append(sums[j] - edge)
            edge *= log_T

        sigma = float(z.real)
        logs = np.log(primes.astype(np.float64))
        weights = primes.astype(np.float64) ** (-sigma)
        boundary = count * float(T) ** (-sigma)
        magnitudes = [float(np.sum(weights * logs**j)) + boundary * log(float(T)) ** j for j in range(N + 1)]
        eps = float(machine_eps())
        rounding = moment_rounding(primes, w, N)

        results = []
        for n in range(N + 1):
            coefficients = log_power_coefficients(n, w)
            value = mp.fsum(c * differences[n - k] for k, c in enumerate(coefficients))
            error = sum(
                as_float(c) * (rounding[n - k] + eps * (n + 2) * magnitudes[n - k]) for k, c in enumerate(coefficients)
            )
            results.append(
                QuadratureResult(
                    value=mp.mpc(value),
                    error_bound=error,
                    truncation_T=T,
                ),
            )
    logger.debug("integrated step function", z=str(z), orders=N + 1, T=str(T), primes=count)
    return results


def integrate_step_weighted(
    table: PrimeTable,
    z: Any,
    n: int,
    T: Any,
    cfg: PrecisionConfig,
) -> QuadratureResult:
    """∫₂^T π(t)·lnⁿt·t^(−z−1) dt, exact up to rounding."""
    return integrate_step_weighted_orders(table, z, n, T, cfg)[n]


def integrate_li_polynomial(
    z: Any,
    coefficients: Sequence[Any],
    T: Any,
    cfg: PrecisionConfig,
    *,
    lower: int | None = None,
) -> QuadratureResult:
    """∫_lower^T Li(t)·q(ln t)·t^(−z−1) dt for the polynomial q with ``coefficients`` (constant term first).

    Li(e^u) is memoized at the quadrature nodes, so successive calls at the
    same precision and panels only pay for the polynomial and e^(−zu).

    Args:
        z: Exponent parameter.
        coefficients: Coefficients of q in u = ln t.
        T: Upper limit.
        cfg: Precision configuration.
        lower: 2, or 1 to include ∫₁² (``QuadratureSettings.THETA_LOWER_LIMIT``).
    """
    lower = lower or get_settings().quadrature.THETA_LOWER_LIMIT
    if lower not in {1, 2}:
        msg = f"lower limit must be 1 or 2, got {lower}"
        raise ConfigError(msg)
    with working_precision(cfg):
        z = to_complex(z)
        T = mp.mpf(T)
        _check_finite(T)
        w = _narrow(z)
        weights = [to_complex(c) for c in coefficients]
        weights = [_narrow(c) for c in weights]

        def integrand(u: Any) -> Any:
            q = 0
            for c in reversed(weights):
                q = q * u + c
            return li_of_exp(u, mp.mp.prec) * q * mp.exp(-w * u)

        value: Any = mp.mpf(0)
        error = mp.mpf(0)
        magnitude = mp.mpf(0)
        log_T = mp.log(T) if T > 0 else mp.ninf
        if lower == 1 and log_T > 0:
            # tanh-sinh absorbs the ln(u) singularity of Li(e^u) at u = 0
            head, head_error = mp.quad(integrand, [0, min(mp.ln2, log_T)], error=True)
            value += head
            error += head_error
            magnitude += abs(head)
        if log_T > mp.ln2:
            body, body_error, body_magnitude = _gauss_legendre(
                integrand,
                _panel_edges(mp.ln2, log_T, _panel_width(z)),
            )
            value += body
            error += body_error
            magnitude += body_magnitude
        error_bound = as_float(error + machine_eps() * (len(weights) + 2) * magnitude)
        tails: dict[str, float] = {}
        if z.real > 1 and T > 2:  # noqa: PLR2004
            tails[TailModel.LI_SMOOTH] = sum(
                as_float(c) * tail_bound(TailModel.LI_SMOOTH, z, k, T) for k, c in enumerate(weights) if c != 0
            )
    return QuadratureResult(
        value=mp.mpc(value),
        error_bound=error_bound,
        truncation_T=T,
        lower=float(lower),
        tail_model=TailModel.LI_SMOOTH if tails else TailModel.NONE,
        tail_bounds=tails,
    )


def _sigma_weighted(z: mp.mpc, n: int, T: mp.mpf, gamma: Any, frequency: Any) -> QuadratureResult:
    rate = z + gamma - 1
    if rate.real <= 0:
        msg = f"sigma kernel integral diverges for Re z <= 1 - gamma (z = {z}, gamma = {gamma})"
        raise DivergenceError(msg)
    rate = _narrow(rate)
    omega = mp.mpf(frequency)
    tau_max = mp.log(T)
    if tau_max <= 0:
        return QuadratureResult(value=mp.mpc(0), error_bound=0.0, truncation_T=T, lower=1.0)

    def integrand(tau: Any) -> Any:
        return 2 * mp.cos(omega * tau) * tau**n * mp.exp(-rate * tau)

    half_period = mp.pi / (2 * omega)
    cuts = [mp.mpf(0)]
    k = 0
    while (2 * k + 1) * half_period < tau_max:
        cuts.append((2 * k + 1) * half_period)
        k += 1
    cuts.append(tau_max)
    edges = [cuts[0]]
    width = _panel_width(mp.mpc(rate))
    for a, b in zip(cuts[:-1], cuts[1:], strict=True):
        edges.extend(_panel_edges(a, b, width)[1:])
    value, error, magnitude = _gauss_legendre(integrand, edges)
    tail = tail_bound(TailModel.SIGMA_GEOMETRIC, z, n, T, gamma=gamma)
    return QuadratureResult(
        value=mp.mpc(value),
        error_bound=as_float(error + machine_eps() * len(edges) * magnitude),
        truncation_T=T,
        lower=1.0,
        tail_model=TailModel.SIGMA_GEOMETRIC,
        tail_bounds={TailModel.SIGMA_GEOMETRIC: tail},
    )


def _abs_log_polynomial(n: int, w: Any) -> list[float]:
    """|coefficients| of the antiderivative's polynomial in ln t, highest power first."""
    if w == 0:
        return [1.0 / (n + 1)] + [0.0] * (n + 1)
    return [as_float(c) for c in log_power_coefficients(n, w)]


def _fractional_weighted(z: mp.mpc, n: int, T: mp.mpf) -> QuadratureResult:
    """∫₁^T (1/2 − {t})·lnⁿt·t^(−z−1) dt, exact per unit interval.

    On [k, k+1) the kernel is (k + 1/2) − t, so the interval contributes
    (k + 1/2)[G_z] − [G_(z−1)] with G_w the antiderivative of lnⁿt·t^(−w−1).
    Summation by parts leaves one evaluation of G_z per integer.
    """
    K = int(mp.floor(T))
    w = _narrow(z)
    shifted = w - 1

    def g(m: Any) -> Any:
        return log_power_antiderivative(n, w, m)

    def h(m: Any) -> Any:
        return log_power_antiderivative(n, shifted, m)

    value: Any = mp.mpf(0)
    if K >= 2:  # noqa: PLR2004
        interior: Any = mp.mpf(0)
        for m in range(2, K):
            interior += log_power_antiderivative(n, w, m, log_t=mp.log(m))
        value = (K - mp.mpf(0.5)) * g(K) - mp.mpf(1.5) * g(1) - interior - (h(K) - h(1))
    if T > K:
        value += (K + mp.mpf(0.5)) * (g(T) - g(K)) - (h(T) - h(K))

    sigma = float(z.real)
    g_poly = _abs_log_polynomial(n, w)
    h_poly = _abs_log_polynomial(n, shifted)
    ms = np.arange(1, K + 2, dtype=np.float64)
    logs = np.log(ms)
    magnitude = float(
        np.sum(ms ** (-sigma) * np.polyval(g_poly, logs))
        + (K + 1) * np.max(ms ** (-sigma) * (np.polyval(g_poly, logs) + ms * np.polyval(h_poly, logs))),
    )
    eps = float(machine_eps())
    tail = tail_bound(TailModel.FRACTIONAL_PART, z, n, T)
    return QuadratureResult(
        value=mp.mpc(value),
        error_bound=eps * (K + n + 2) * magnitude,
        truncation_T=T,
        lower=1.0,
        tail_model=TailModel.FRACTIONAL_PART,
        tail_bounds={TailModel.FRACTIONAL_PART: tail},
    )


def integrate_smooth_weighted(
    kind: SmoothKernel | str,
    z: Any,
    n: int,
    T: Any,
    cfg: PrecisionConfig,
    *,
    params: Mapping[str, Any] | None = None,
    lower: int | None = None,
) -> QuadratureResult:
    """∫ f(t)·lnⁿt·t^(−z−1) dt for a smooth kernel f up to ``T``.

    Kernels:
        li: f = Li over [lower, T].
        sigma_counterexample: f(t) = t·σ(t) with σ(t) = 2cos(ω ln t)/t^γ over
            [1, T]; ``params`` carries ``gamma`` and ``frequency``.
        fractional_part_kernel: f(t) = 1/2 − {t} over [1, T].

    Raises:
        ConfigError: Unknown kernel or ``n`` above ``cfg.max_order``.
        DivergenceError: Infinite ``T`` or ``Re z`` outside the kernel's half-plane.
    """
    try:
        kernel = SmoothKernel(kind)
    except ValueError as e:
        msg = f"unknown smooth kernel {kind!r}; expected one of {[k.value for k in SmoothKernel]}"
        raise ConfigError(msg) from e
    _check_order(n, cfg)
    params = params or {}
    with working_precision(cfg):
        z = to_complex(z)
        T = mp.mpf(T)
        _check_finite(T)
        if kernel is SmoothKernel.LI:
            if z.real <= 1:
                msg = f"Li-weighted integral diverges for Re z <= 1, got z = {z}"
                raise DivergenceError(msg)
            coefficients = [0] * n + [1]
            return integrate_li_polynomial(z, coefficients, T, cfg, lower=lower)
        if kernel is SmoothKernel.SIGMA_COUNTEREXAMPLE:
            if "gamma" not in params:
                msg = "sigma kernel needs params['gamma']"
                raise ConfigError(msg)
            return _sigma_weighted(z, n, T, mp.mpf(params["gamma"]), params.get("frequency", 12))
        if z.real <= -1:
            msg = f"fractional-part integral diverges for Re z <= -1, got z = {z}"
            raise DivergenceError(msg)
        if T < 1:
            return QuadratureResult(value=mp.mpc(0), error_bound=0.0, truncation_T=T, lower=1.0)
        return _fractional_weighted(z, n, T)


def tail_bound(kind: TailModel | str, z: Any, n: int, T: Any, *, gamma: Any = None) -> float:
    """Upper bound for |∫_T^∞ f(t)·lnⁿt·t^(−z−1) dt| under a growth model for f.

    With U = ln T and σ = Re z, every model reduces to moments
    ∫_U^∞ uᵏ e^(−cu) du = Γ(k+1, cU)/c^(k+1):

    - unconditional: e^(−0.005 U^(3/5)) Γ(n+1,(σ−1)U)/(σ−1)^(n+1)
    - square_root: Γ(n+2,(σ−½)U)/(σ−½)^(n+2)
    - prime_step: 1.25506 Γ(n,(σ−1)U)/(σ−1)^n (li_smooth with 1.5)
    - fractional_part: (n Γ(n,cU)/cⁿ + |z+1| Γ(n+1,cU)/c^(n+1))/8 with c = σ+1,
      plus |T^(−z−1)| lnⁿT/8 when T is not an integer
    - sigma_geometric: 2 Γ(n+1,cU)/c^(n+1) with c = σ+γ−1
    - prime_sum: Γ(n+1,(σ−1)U)/(σ−1)^(n+1), the integral dominating
      Σ_{p>T} p^(−σ) lnⁿp

    Every bound is decreasing in T.

    Raises:
        ConfigError: Unknown model.
        DomainError: T below 100 for the pi − Li models, or σ outside the
            model's half-plane.
    """
    try:
        model = TailModel(kind)
    except ValueError as e:
        msg = f"unknown tail model {kind!r}; expected one of {[m.value for m in TailModel]}"
        raise ConfigError(msg) from e
    z = to_complex(z)
    T = mp.mpf(T)
    sigma = z.real
    if model is TailModel.NONE:
        return 0.0
    if model in _PHI_MODELS and T < MIN_TAIL_T:
        msg = f"{model} tail model applies for T >= {MIN_TAIL_T}, got T = {T}"
        raise DomainError(msg)
    if T <= 1:
        msg = f"tail bounds need T > 1, got T = {T}"
        raise DomainError(msg)
    U = mp.log(T)

    def need(rate: Any, condition: str) -> Any:
        if rate <= 0:
            msg = f"{model} tail bound needs {condition}, got z = {z}"
            raise DivergenceError(msg)
        return rate

    match model:
        case TailModel.UNCONDITIONAL:
            rate = need(sigma - 1, "Re z > 1")
            bound = mp.exp(-UNCONDITIONAL_DECAY * U**UNCONDITIONAL_EXPONENT) * log_moment_tail(n, rate, U)
        case TailModel.SQUARE_ROOT:
            rate = need(sigma - mp.mpf(0.5), "Re z > 1/2")
            bound = log_moment_tail(n + 1, rate, U)
        case TailModel.PRIME_STEP:
            bound = STEP_DENSITY_CONSTANT * log_moment_tail(n - 1, need(sigma - 1, "Re z > 1"), U)
        case TailModel.LI_SMOOTH:
            bound = LI_DENSITY_CONSTANT * log_moment_tail(n - 1, need(sigma - 1, "Re z > 1"), U)
        case TailModel.FRACTIONAL_PART:
            rate = need(sigma + 1, "Re z > -1")
            bound = abs(z + 1) * log_moment_tail(n, rate, U)
            if n > 0:
                bound += n * log_moment_tail(n - 1, rate, U)
            if T != mp.floor(T):
                bound += mp.exp(-(sigma + 1) * U) * U**n
            bound /= 8
        case TailModel.PRIME_SUM:
            bound = log_moment_tail(n, need(sigma - 1, "Re z > 1"), U)
        case TailModel.SIGMA_GEOMETRIC:
            if gamma is None:
                msg = "sigma_geometric tail bound needs gamma"
                raise ConfigError(msg)
            bound = 2 * log_moment_tail(n, need(sigma + gamma - 1, "Re z > 1 - gamma"), U)
    return as_float(bound)
