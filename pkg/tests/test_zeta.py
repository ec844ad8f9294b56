from __future__ import annotations

import mpmath as mp
import numpy as np
import pytest

from thetazeta.config.base import get_settings
from thetazeta.domain.primes import PrimeTable
from thetazeta.domain.quadrature import PrecisionConfig
from thetazeta.domain.zeta import (
    ZetaMethod,
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
from thetazeta.lib.exceptions import DomainError, NearZeroError, NotAZeroError, PoleError


def test_zeta_at_two(cfg: PrecisionConfig) -> None:
    result = zeta(2, cfg)
    with mp.workdps(30):
        assert abs(result.value - mp.pi**2 / 6) < mp.mpf("1e-25")
    assert result.method is ZetaMethod.DIRICHLET_EM
    assert result.error_bound < 1e-20


def test_zeta_on_the_critical_line(cfg: PrecisionConfig) -> None:
    with mp.workdps(30):
        reference = mp.zeta(mp.mpc(0.5, 21))
    assert abs(zeta(mp.mpc(0.5, 21), cfg).value - reference) < mp.mpf("1e-20")


@pytest.mark.slow
def test_methods_agree_within_bounds(cfg: PrecisionConfig) -> None:
    rng = np.random.default_rng(7)
    for re, im in zip(rng.uniform(1, 3, 100), rng.uniform(-20, 20, 100), strict=True):
        z = mp.mpc(float(re), float(im))
        series = zeta(z, cfg)
        integral = zeta(z, cfg, ZetaMethod.INTEGRAL_REPR)
        assert abs(series.value - integral.value) <= series.error_bound + integral.error_bound
        mirrored = zeta(mp.conj(z), cfg)
        assert abs(mirrored.value - mp.conj(series.value)) <= 2 * series.error_bound + 1e-20


@pytest.mark.parametrize("direction", [1, -1, 1j, -1j], ids=["right", "left", "up", "down"])
def test_pole_residue(direction: complex, cfg: PrecisionConfig) -> None:
    # (z - 1)ζ(z) = 1 + γ(z - 1) + O((z - 1)²)
    z = 1 + mp.mpf("1e-4") * mp.mpc(direction)
    with mp.workdps(30):
        value = (z - 1) * zeta(z, cfg).value
        assert abs(value - 1 - mp.euler * (z - 1)) < mp.mpf("1e-6")


def test_psi_links_to_zeta(cfg: PrecisionConfig) -> None:
    z = mp.mpc(2, 1)
    with mp.workdps(30):
        assert abs((z - 1) * zeta(z, cfg).value - 1 - psi(z, cfg)) < mp.mpf("1e-9")


def test_zeta_domain(cfg: PrecisionConfig) -> None:
    with pytest.raises(PoleError):
        zeta(1, cfg)
    with pytest.raises(DomainError):
        zeta(-1, cfg)
    with pytest.raises(DomainError):
        psi(mp.mpc(-0.5, 1), cfg)


def test_zeta_derivative(cfg: PrecisionConfig) -> None:
    with mp.workdps(30):
        reference = mp.zeta(2, derivative=1)
        assert abs(zeta_derivative(2, cfg) - reference) < mp.mpf("1e-20")


def test_euler_product(table_mid: PrimeTable, cfg: PrecisionConfig) -> None:
    with mp.workdps(30):
        assert abs(euler_product(2, table_mid, cfg) - mp.pi**2 / 6) < mp.mpf("1e-4")
    with pytest.raises(DomainError):
        euler_product(1, table_mid, cfg)


def test_difference_step(cfg: PrecisionConfig) -> None:
    assert abs(difference_step(cfg) - mp.mpf("1e-10")) < mp.mpf("1e-22")
    assert abs(difference_step(PrecisionConfig(digits=15)) - mp.mpf("1e-5")) < mp.mpf("1e-17")


def test_log_deriv_decomposition(cfg: PrecisionConfig) -> None:
    result = log_deriv_decomposition(2, cfg)
    with mp.workdps(30):
        reference = mp.zeta(2, derivative=1) / mp.zeta(2)
        assert abs(result.pole_part + 1) < mp.mpf("1e-25")
        assert abs(result.pole_part + result.F_value - reference) < result.error_bound + 1e-12
        assert abs(result.log_derivative - reference) < mp.mpf("1e-20")
    assert result.error_bound < 1e-6


def test_log_deriv_decomposition_domain(cfg: PrecisionConfig) -> None:
    with pytest.raises(DomainError):
        log_deriv_decomposition(mp.mpc(0.4, 1), cfg)
    with pytest.raises(DomainError):
        log_deriv_decomposition(mp.mpc(2, 13), cfg)
    with pytest.raises(PoleError):
        log_deriv_decomposition(1, cfg)


def test_log_deriv_decomposition_refuses_small_zeta(monkeypatch: pytest.MonkeyPatch, cfg: PrecisionConfig) -> None:
    monkeypatch.setenv("THETAZETA_NEAR_ZERO", "10")
    get_settings.cache_clear()
    with pytest.raises(NearZeroError):
        log_deriv_decomposition(2, cfg)


def test_printed_kernel_is_off_by_one_half(cfg: PrecisionConfig) -> None:
    assert abs(printed_kernel_offset(2, cfg) - mp.mpf(0.5)) < mp.mpf("1e-6")


def test_refine_first_zero(cfg: PrecisionConfig) -> None:
    assert abs(refine_zero(14.134, cfg) - mp.mpf("14.134725141734693790")) < mp.mpf("1e-7")


def test_refine_without_a_zero_nearby(cfg: PrecisionConfig) -> None:
    with pytest.raises(NotAZeroError):
        refine_zero(17.5, cfg)


def test_listed_zeros(cfg: PrecisionConfig) -> None:
    rows = refine_listed_zeros(60, cfg)
    assert len(rows) == 10
    assert [row.flagged for row in rows].count(True) == 1
    sixth = rows[5]
    assert sixth.listed == 37.935
    assert sixth.flagged
    assert abs(sixth.refined - mp.mpf("37.586178158825671257")) < mp.mpf("1e-6")
    assert all(row.abs_zeta < 1e-4 for row in rows)
    assert len(refine_listed_zeros(30, cfg)) == 3
