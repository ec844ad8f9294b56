"""Small helpers around mpmath shared by the domain modules."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import mpmath as mp

if TYPE_CHECKING:
    from contextlib import AbstractContextManager

    from thetazeta.domain.quadrature.schemas import PrecisionConfig

__all__ = (
    "as_float",
    "format_number",
    "machine_eps",
    "to_complex",
    "working_precision",
)


def working_precision(cfg: PrecisionConfig) -> AbstractContextManager[Any]:
    return mp.workdps(cfg.digits)


def to_complex(value: Any) -> mp.mpc:
    """Coerce a Python or mpmath number (or ``"re,im"`` text) to ``mpc``."""
    if isinstance(value, str):
        parts = [part.strip() for part in value.split(",")]
        if len(parts) == 1:
            return mp.mpc(mp.mpf(parts[0]), 0)
        if len(parts) == 2:  # noqa: PLR2004
            return mp.mpc(mp.mpf(parts[0]), mp.mpf(parts[1]))
        msg = f"cannot parse complex number from {value!r}"
        raise ValueError(msg)
    return mp.mpc(value)


def machine_eps() -> mp.mpf:
    """Unit roundoff at the current working precision."""
    return mp.ldexp(mp.mpf(1), -mp.mp.prec)


def as_float(value: Any) -> float:
    """Magnitude-preserving float for error bounds (saturates at 1e308)."""
    magnitude = abs(mp.mpmathify(value))
    if mp.isinf(magnitude) or magnitude > mp.mpf("1e308"):
        return float("inf")
    return float(magnitude)


def format_number(value: Any, digits: int) -> str:
    """Fixed significant-digit rendering, stable across runs.

    Real values render as a single number, complex values with nonzero
    imaginary part as ``re+imj`` in the same precision.
    """
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, mp.mpc) or isinstance(value, complex):
        z = mp.mpc(value)
        if z.imag == 0:
            return mp.nstr(z.real, digits, strip_zeros=False, min_fixed=-4, max_fixed=8)
        re = mp.nstr(z.real, digits, strip_zeros=False, min_fixed=-4, max_fixed=8)
        im = mp.nstr(abs(z.imag), digits, strip_zeros=False, min_fixed=-4, max_fixed=8)
        sign = "-" if z.imag < 0 else "+"
        return f"{re}{sign}{im}j"
    return mp.nstr(mp.mpf(value), digits, strip_zeros=False, min_fixed=-4, max_fixed=8)
