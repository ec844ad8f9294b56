from __future__ import annotations

import mpmath as mp
import numpy as np
import pytest

from thetazeta.config.base import get_settings
from thetazeta.domain.primes import PrimeTable
from thetazeta.domain.quadrature import (
    PrecisionConfig,
    QuadratureResult,
    SmoothKernel,
    TailModel,
    entire_pole_combination,
    exp_integral_e1,
    integrate_li_polynomial,
    integrate_smooth_weighted,
    integrate_step_weighted,
    integrate_step_weighted_orders,
    li_offset,
    log_power_antiderivative,
    moment_rounding,
    prime_log_moments,
    tail_bound,
)
from thetazeta.lib.exceptions import ConfigError, DivergenceError, DomainError, OutOfRangeError


def test_li_offset(cfg: PrecisionConfig) -> None:
    assert li_offset(2, cfg) == 0
    with mp.workdps(30):
        assert abs(li_offset(10, cfg) - (mp.li(10) - mp.li(2))) < mp.mpf("1e-25")
    with pytest.raises(DomainError):
        li_offset(1.5, cfg)


def test_exp_integral_e1(cfg: PrecisionConfig) -> None:
    assert abs(exp_integral_e1(1, cfg) - mp.mpf("0.219383934395520273677163775460")) < mp.mpf("1e-25")
    value = exp_integral_e1(mp.mpc(1, 2), cfg)
    assert abs(exp_integral_e1(mp.mpc(1, -2), cfg) - mp.conj(value)) < mp.mpf("1e-25")
    with pytest.raises(DomainError):
        exp_integral_e1(mp.mpc(0, 1), cfg)


def test_entire_pole_combination_is_continuous_at_one(cfg: PrecisionConfig) -> None:
    assert abs(entire_pole_combination(1, cfg) - mp.ln2) < mp.mpf("1e-28")
    near = mp.mpc("1.0001", "0.00002")
    with mp.workdps(60):
        w = near - 1
        reference = (1 - mp.exp(-w * mp.ln2)) / w
    assert abs(entire_pole_combination(near, cfg) - reference) < mp.mpf("1e-27")


def test_log_power_antiderivative_differentiates_back() -> None:
    w = mp.mpc(1.5, 2)
    with mp.workdps(30):
        derivative = mp.diff(lambda t: log_power_antiderivative(3, w, t), 3)
        expected = mp.log(3) ** 3 * mp.power(3, -w - 1)
        assert abs(derivative - expected) < mp.mpf("1e-20")
        assert abs(log_power_antiderivative(2, 0, mp.e) - mp.mpf(1) / 3) < mp.mpf("1e-25")


def test_prime_log_moments() -> None:
    with mp.workdps(30):
        sums = prime_log_moments(np.array([2, 3], dtype=np.int64), 1, 1)
        assert abs(sums[0] - (mp.mpf(1) / 2 + mp.mpf(1) / 3)) < mp.mpf("1e-28")
        assert abs(sums[1] - (mp.log(2) / 2 + mp.log(3) / 3)) < mp.mpf("1e-28")
        assert max(moment_rounding(np.array([2, 3], dtype=np.int64), 1, 1)) < 1e-25


@pytest.mark.parametrize("cutoff", [None, 10], ids=["default", "mostly-float"])
def test_prime_log_moments_within_rounding_bound(
    cutoff: int | None,
    table_mid: PrimeTable,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    if cutoff is not None:
        monkeypatch.setenv("THETAZETA_EXACT_PRIME_CUTOFF", str(cutoff))
        get_settings.cache_clear()
    primes = table_mid.primes
    with mp.workdps(30):
        z = mp.mpc(1.5, 2)
        sums = prime_log_moments(primes, z, 2)
        bounds = moment_rounding(primes, z, 2)
        for j in range(3):
            reference = mp.fsum(mp.power(p, -z) * mp.log(p) ** j for p in primes.tolist())
            assert abs(sums[j] - reference) <= bounds[j] + 1e-25
    if cutoff is not None:
        assert bounds[0] > 1e-16


def test_step_integral_is_exact(table_small: PrimeTable, cfg: PrecisionConfig) -> None:
    z = mp.mpc(2, 1)
    result = integrate_step_weighted(table_small, z, 2, 10, cfg)
    with mp.workdps(30):
        pieces = [(2, 3, 1), (3, 5, 2), (5, 7, 3), (7, 10, 4)]
        expected = mp.fsum(
            count * mp.quad(lambda t: mp.log(t) ** 2 * mp.power(t, -z - 1), [a, b]) for a, b, count in pieces
        )
        assert abs(result.value - expected) < mp.mpf("1e-25")
    assert result.error_bound < 1e-25
    assert result.tail_model == TailModel.NONE


def test_step_orders_agree_with_single_order(table_small: PrimeTable, cfg: PrecisionConfig) -> None:
    orders = integrate_step_weighted_orders(table_small, 3, 4, 1_000, cfg)
    assert len(orders) == 5
    single = integrate_step_weighted(table_small, 3, 3, 1_000, cfg)
    assert abs(orders[3].value - single.value) < mp.mpf("1e-25")


def test_step_integral_errors(table_small: PrimeTable, cfg: PrecisionConfig) -> None:
    with pytest.raises(OutOfRangeError):
        integrate_step_weighted(table_small, 2, 0, 2_000, cfg)
    with pytest.raises(DomainError):
        integrate_step_weighted(table_small, -0.5, 0, 100, cfg)
    with pytest.raises(ConfigError):
        integrate_step_weighted(table_small, 2, 41, 100, cfg)
    below_two = integrate_step_weighted(table_small, 2, 1, 1.5, cfg)
    assert below_two.value == 0


def test_li_kernel_matches_direct_quadrature(cfg: PrecisionConfig) -> None:
    result = integrate_smooth_weighted(SmoothKernel.LI, 2, 1, 100, cfg)
    with mp.workdps(30):
        expected = mp.quad(lambda t: mp.li(t, offset=True) * mp.log(t) * t**-3, [2, 10, 100])
        assert abs(result.value - expected) < mp.mpf("1e-20")
    assert result.lower == 2.0
    assert TailModel.LI_SMOOTH in result.tail_bounds


def test_li_polynomial_from_one(cfg: PrecisionConfig) -> None:
    result = integrate_li_polynomial(mp.mpc(3, 1), [1, -2], 50, cfg, lower=1)
    with mp.workdps(30):
        z = mp.mpc(3, 1)

        def integrand(t: mp.mpf) -> mp.mpc:
            return mp.li(t, offset=True) * (1 - 2 * mp.log(t)) * mp.power(t, -z - 1)

        expected = mp.quad(integrand, [1, 2, 10, 50])
        assert abs(result.value - expected) < mp.mpf("1e-15")
    assert result.lower == 1.0
    with pytest.raises(ConfigError):
        integrate_li_polynomial(2, [1], 50, cfg, lower=3)


def test_fractional_kernel_matches_unit_intervals(cfg: PrecisionConfig) -> None:
    z = mp.mpc(2, 1)
    result = integrate_smooth_weighted(SmoothKernel.FRACTIONAL_PART_KERNEL, z, 1, mp.mpf("10.5"), cfg)
    with mp.workdps(30):
        expected = mp.fsum(
            mp.quad(lambda t, k=k: (k + mp.mpf(0.5) - t) * mp.log(t) * mp.power(t, -z - 1), [k, min(k + 1, 10.5)])
            for k in range(1, 11)
        )
        assert abs(result.value - expected) < mp.mpf("1e-22")
    assert result.lower == 1.0


def test_sigma_kernel_matches_direct_quadrature(cfg: PrecisionConfig) -> None:
    T = mp.exp(5)
    result = integrate_smooth_weighted(
        SmoothKernel.SIGMA_COUNTEREXAMPLE,
        2,
        1,
        T,
        cfg,
        params={"gamma": 0.2, "frequency": 12},
    )
    with mp.workdps(30):
        expected = mp.quad(
            lambda tau: 2 * mp.cos(12 * tau) * tau * mp.exp(-(mp.mpf("1.2")) * tau),
            mp.linspace(0, 5, 41),
        )
        assert abs(result.value - expected) < mp.mpf("1e-18")
    assert result.tail_model == TailModel.SIGMA_GEOMETRIC


def test_smooth_kernel_errors(cfg: PrecisionConfig) -> None:
    with pytest.raises(ConfigError):
        integrate_smooth_weighted("bessel", 2, 0, 10, cfg)
    with pytest.raises(DivergenceError):
        integrate_smooth_weighted(SmoothKernel.LI, 1, 0, 10, cfg)
    with pytest.raises(ConfigError):
        integrate_smooth_weighted(SmoothKernel.SIGMA_COUNTEREXAMPLE, 2, 0, 10, cfg)
    with pytest.raises(DivergenceError):
        integrate_smooth_weighted(SmoothKernel.SIGMA_COUNTEREXAMPLE, 0.7, 0, 10, cfg, params={"gamma": 0.2})
    with pytest.raises(DivergenceError):
        integrate_smooth_weighted(SmoothKernel.LI, 2, 0, mp.inf, cfg)


def test_tail_bounds_decrease_in_truncation() -> None:
    for model in (TailModel.UNCONDITIONAL, TailModel.SQUARE_ROOT, TailModel.PRIME_SUM, TailModel.LI_SMOOTH):
        bounds = [tail_bound(model, 2, 2, T) for T in (1e3, 1e4, 1e5, 1e6)]
        assert all(later < earlier for earlier, later in zip(bounds, bounds[1:], strict=False))


def test_unconditional_tail_dominates_square_root() -> None:
    assert tail_bound(TailModel.UNCONDITIONAL, 2, 0, 1_000) > tail_bound(TailModel.SQUARE_ROOT, 2, 0, 1_000)


def test_prime_sum_tail_is_the_integral() -> None:
    # Γ(1, U)/1 with U = ln T is 1/T at z = 2
    assert tail_bound(TailModel.PRIME_SUM, 2, 0, 1e5) == pytest.approx(1e-5, rel=1e-12)


def test_tail_bound_errors() -> None:
    assert tail_bound(TailModel.NONE, 2, 0, 10) == 0.0
    with pytest.raises(ConfigError):
        tail_bound("cubic", 2, 0, 1_000)
    with pytest.raises(DomainError):
        tail_bound(TailModel.UNCONDITIONAL, 2, 0, 50)
    with pytest.raises(DivergenceError):
        tail_bound(TailModel.UNCONDITIONAL, 0.9, 0, 1_000)
    assert tail_bound(TailModel.SQUARE_ROOT, 0.9, 0, 1_000) > 0
    with pytest.raises(ConfigError):
        tail_bound(TailModel.SIGMA_GEOMETRIC, 2, 0, 1_000)


def test_quadrature_result_rejects_bad_bounds() -> None:
    with pytest.raises(ValueError, match="error bound"):
        QuadratureResult(value=0, error_bound=-1.0, truncation_T=10)
    with pytest.raises(ValueError, match="error bound"):
        QuadratureResult(value=0, error_bound=float("nan"), truncation_T=10)
