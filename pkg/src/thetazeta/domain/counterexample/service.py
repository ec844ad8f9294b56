"""The oscillating example σ(t) = 2cos(ω ln t)/t^γ and its exact transform.

Its transform ∫₁^∞ σ(t) t^(−z) dt is the rational function
2(z+γ−1)/(ω² + (z+γ−1)²) = 1/(z − p₊) + 1/(z − p₋), which makes it the
ground truth the radius estimator is calibrated against.
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import TYPE_CHECKING, Any

import mpmath as mp
from structlog import get_logger

from thetazeta.config.constants import CALIBRATION_TOLERANCE, POLE_RADIUS
from thetazeta.domain.quadrature import QuadratureResult, SmoothKernel, integrate_smooth_weighted
from thetazeta.domain.theta import RadiusMethod, TaylorExpansion, estimate_radius
from thetazeta.lib.exceptions import DivergenceError, PoleError, ThetaZetaError
from thetazeta.lib.numeric import as_float, machine_eps, to_complex, working_precision

from .schemas import CalibrationReport, ComparisonRow, CounterexampleSpec

if TYPE_CHECKING:
    from thetazeta.domain.quadrature import PrecisionConfig

__all__ = (
    "calibrate",
    "ce_expansion_ground_truth",
    "ce_phi_closed",
    "ce_phi_numeric",
    "ce_taylor_expansion",
    "compare_grid",
    "default_comparison_grid",
    "sigma",
)

logger = get_logger()


def sigma(t: Any, spec: CounterexampleSpec) -> mp.mpf:
    t = mp.mpf(t)
    return 2 * mp.cos(spec.frequency * mp.log(t)) / mp.power(t, spec.gamma)


def ce_phi_closed(z: Any, spec: CounterexampleSpec) -> mp.mpc:
    """2(z+γ−1)/(ω² + (1−z−γ)²).

    Raises:
        PoleError: ``z`` within 1e-9 of 1 − γ ± iω.
    """
    z = to_complex(z)
    for pole in spec.pole_pair:
        if abs(z - pole) < POLE_RADIUS:
            msg = f"z = {z} is at the pole {pole}"
            raise PoleError(msg)
    shift = z + spec.gamma - 1
    return 2 * shift / (mp.mpf(spec.frequency) ** 2 + shift**2)


def _default_truncation(z: mp.mpc, spec: CounterexampleSpec, cfg: PrecisionConfig) -> mp.mpf:
    # tail 2e^(-c tau)/c <= abs_tol
    c = z.real + spec.gamma - 1
    tau = mp.log(2 / (c * cfg.abs_tol)) / c
    return mp.exp(max(tau, mp.mpf(1)))


def ce_phi_numeric(z: Any, spec: CounterexampleSpec, cfg: PrecisionConfig, T: Any = None) -> QuadratureResult:
    """∫₁^∞ σ(t) t^(−z) dt as ∫₀^∞ 2cos(ωτ)e^(−(z+γ−1)τ) dτ.

    ``T`` defaults to the smallest truncation whose geometric tail meets
    ``cfg.abs_tol``; the tail is folded into ``error_bound``.

    Raises:
        DivergenceError: ``Re z <= 1 − γ``.
    """
    with working_precision(cfg):
        z = to_complex(z)
        if z.real + spec.gamma - 1 <= 0:
            msg = f"the transform converges for Re z > {1 - spec.gamma}, got z = {z}"
            raise DivergenceError(msg)
        T = _default_truncation(z, spec, cfg) if T is None else mp.mpf(T)
        part = integrate_smooth_weighted(
            SmoothKernel.SIGMA_COUNTEREXAMPLE,
            z,
            0,
            T,
            cfg,
            params={"gamma": spec.gamma, "frequency": spec.frequency},
        )
    tail = part.tail_bounds[part.tail_model]
    return QuadratureResult(
        value=part.value,
        error_bound=part.error_bound + tail,
        truncation_T=T,
        lower=1.0,
        tail_model=part.tail_model,
        tail_bounds=part.tail_bounds,
        discretization_error=part.error_bound,
    )


def ce_expansion_ground_truth(a: Any, spec: CounterexampleSpec) -> float:
    """Distance from ``a`` to the nearer pole: the exact radius of convergence at ``a``."""
    a = to_complex(a)
    return float(min(abs(a - pole) for pole in spec.pole_pair))


def ce_taylor_expansion(a: Any, spec: CounterexampleSpec, N: int, cfg: PrecisionConfig) -> TaylorExpansion:
    """Exact Taylor coefficients c_n = −Σ± (p± − a)^(−n−1) of the transform at ``a``."""
    with working_precision(cfg):
        a = to_complex(a)
        ce_phi_closed(a, spec)
        offsets = [pole - a for pole in spec.pole_pair]
        coefficients = [-mp.fsum(mp.power(d, -n - 1) for d in offsets) for n in range(N + 1)]
        eps = machine_eps()
        errors = [
            as_float(eps * (abs(c) + mp.fsum(abs(mp.power(d, -n - 1)) for d in offsets)))
            for n, c in enumerate(coefficients)
        ]
    return TaylorExpansion(
        center=a,
        coefficients=coefficients,
        coeff_error_bounds=errors,
        N=N,
        digits=cfg.digits,
    )


def calibrate(
    a: Any,
    spec: CounterexampleSpec,
    N: int,
    cfg: PrecisionConfig,
    method: RadiusMethod | str = RadiusMethod.REGRESSION,
) -> CalibrationReport:
    """Run the radius estimator on exact coefficients and compare with the true radius."""
    method = RadiusMethod(method)
    truth = ce_expansion_ground_truth(a, spec)
    expansion = ce_taylor_expansion(a, spec, N, cfg)
    estimate = estimate_radius(expansion, method)
    radius = estimate.extrapolated_radius
    relative = abs(radius - truth) / truth if radius is not None else None
    passed = relative is not None and relative <= CALIBRATION_TOLERANCE
    logger.info("calibrated radius estimator", method=str(method), truth=truth, estimate=radius, passed=passed)
    return CalibrationReport(
        center=expansion.center,
        gamma=spec.gamma,
        N=N,
        method=method,
        ground_truth=truth,
        estimate=radius,
        relative_error=relative,
        tolerance=CALIBRATION_TOLERANCE,
        passed=passed,
        caveats=estimate.caveats,
    )


def default_comparison_grid() -> list[mp.mpc]:
    """4×4 points with Re z in [1.1, 3] and Im z in [−5, 5]."""
    reals = [mp.mpf("1.1"), mp.mpf("1.7333333333333333"), mp.mpf("2.3666666666666667"), mp.mpf(3)]
    imags = [mp.mpf(-5), mp.mpf("-1.6666666666666667"), mp.mpf("1.6666666666666667"), mp.mpf(5)]
    return [mp.mpc(x, y) for x in reals for y in imags]


def compare_grid(
    points: Iterable[Any],
    spec: CounterexampleSpec,
    cfg: PrecisionConfig,
    T: Any = None,
) -> list[ComparisonRow]:
    """Closed form against quadrature per point; a failing point becomes a row with ``error`` set."""
    rows = []
    for point in points:
        with working_precision(cfg):
            z = to_complex(point)
        try:
            closed = ce_phi_closed(z, spec)
            numeric = ce_phi_numeric(z, spec, cfg, T)
        except ThetaZetaError as e:
            logger.info("comparison point failed", z=str(z), error=str(e))
            rows.append(ComparisonRow(z=z, gamma=spec.gamma, error=f"{type(e).__name__}: {e}"))
            continue
        with working_precision(cfg):
            residual = as_float(closed - numeric.value)
        rows.append(
            ComparisonRow(
                z=z,
                gamma=spec.gamma,
                closed=closed,
                numeric=numeric.value,
                residual=residual,
                error_bound=numeric.error_bound,
                truncation_T=numeric.truncation_T,
            ),
        )
    return rows
