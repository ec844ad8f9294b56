from __future__ import annotations

from functools import lru_cache
from typing import TYPE_CHECKING, Any

import mpmath as mp

from thetazeta.config.constants import ENTIRE_SERIES_RADIUS
from thetazeta.lib.exceptions import DomainError
from thetazeta.lib.numeric import machine_eps, to_complex, working_precision

if TYPE_CHECKING:
    from .schemas import PrecisionConfig

__all__ = (
    "entire_pole_combination",
    "exp_integral_e1",
    "li_offset",
    "log_moment_tail",
    "log_power_antiderivative",
    "log_power_coefficients",
)


def li_offset(t: Any, cfg: PrecisionConfig) -> mp.mpf:
    """Li(t) = ∫₂ᵗ ds/ln s, so Li(2) = 0.

    Raises:
        DomainError: ``t < 2``.
    """
    with working_precision(cfg):
        t = mp.mpf(t)
        if t < 2:  # noqa: PLR2004
            msg = f"Li(t) is defined here for t >= 2, got t = {t}"
            raise DomainError(msg)
        return mp.li(t, offset=True)


@lru_cache(maxsize=1 << 16)
def li_of_exp(u: mp.mpf, prec: int) -> mp.mpf:
    """Li(e^u) at ``prec`` bits, memoized on the quadrature node."""
    with mp.workprec(prec):
        return mp.li(mp.exp(u), offset=True)


def exp_integral_e1(w: Any, cfg: PrecisionConfig) -> mp.mpc:
    """E₁(w) = ∫₁^∞ e^(−wu)/u du on the right half-plane.

    Raises:
        DomainError: ``Re w <= 0``.
    """
    with working_precision(cfg):
        w = to_complex(w)
        if w.real <= 0:
            msg = f"E1(w) needs Re w > 0, got w = {w}"
            raise DomainError(msg)
        if w.imag == 0:
            return mp.mpc(mp.e1(w.real), 0)
        return mp.e1(w)


def log_power_coefficients(n: int, w: Any) -> list[Any]:
    """Coefficients n!/((n−k)! w^(k+1)) for k = 0..n."""
    coefficients = []
    term = 1 / w
    for k in range(n + 1):
        coefficients.append(term)
        term = term * (n - k) / w
    return coefficients


def log_power_antiderivative(n: int, w: Any, t: Any, *, log_t: Any = None, power: Any = None) -> Any:
    """Antiderivative of lnⁿt·t^(−w−1).

    In u = ln t this is ∫ uⁿ e^(−wu) du, integrated by parts n times::

        G(t) = −t^(−w) Σ_k n!/((n−k)! w^(k+1)) (ln t)^(n−k)

    and lnⁿ⁺¹t/(n+1) when w = 0.

    Args:
        n: Power of the logarithm.
        w: Exponent parameter.
        t: Point of evaluation (> 0).
        log_t: ``ln t`` when the caller already has it.
        power: ``t^(−w)`` when the caller already has it.
    """
    u = mp.log(t) if log_t is None else log_t
    if w == 0:
        return u ** (n + 1) / (n + 1)
    if power is None:
        power = mp.exp(-w * u)
    total = 0
    for k, coefficient in enumerate(log_power_coefficients(n, w)):
        total += coefficient * u ** (n - k)
    return -power * total


def log_moment_tail(n: Any, rate: Any, start: Any) -> mp.mpf:
    """∫_start^∞ uⁿ e^(−rate·u) du = Γ(n+1, rate·start)/rate^(n+1) for rate > 0.

    ``n = -1`` gives E₁(rate·start).
    """
    if rate <= 0:
        msg = f"moment tail needs a positive decay rate, got {rate}"
        raise DomainError(msg)
    return mp.gammainc(n + 1, rate * start) / rate ** (n + 1)


def entire_pole_combination(z: Any, cfg: PrecisionConfig | None = None) -> mp.mpc:
    """(1 − e^(−(z−1)ln 2))/(z−1), continued to ln 2 at z = 1.

    Summed as Σ_k (−1)^k w^k (ln 2)^(k+1)/(k+1)! with w = z − 1 when
    |w| is below the series radius.
    """
    with working_precision(cfg) if cfg is not None else mp.workprec(mp.mp.prec):
        w = to_complex(z) - 1
        ln2 = mp.ln2
        if abs(w) >= ENTIRE_SERIES_RADIUS:
            return (1 - mp.exp(-w * ln2)) / w
        eps = machine_eps()
        term = mp.mpc(ln2)
        total = mp.mpc(0)
        k = 0
        while abs(term) > eps * abs(total) or k == 0:
            total += term
            k += 1
            term = -term * w * ln2 / (k + 1)
        return total
