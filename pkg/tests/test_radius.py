from __future__ import annotations

import math

import mpmath as mp
import pytest

from thetazeta.domain.theta import RadiusMethod, TaylorExpansion, estimate_radius, upper_hull
from thetazeta.lib.exceptions import InsufficientDataError


def geometric(radius: float, N: int = 20, **extra: object) -> TaylorExpansion:
    return TaylorExpansion(
        center=mp.mpc(2),
        coefficients=[mp.mpf(radius) ** -n for n in range(N + 1)],
        coeff_error_bounds=[0.0] * (N + 1),
        N=N,
        **extra,
    )


@pytest.mark.parametrize("method", list(RadiusMethod))
def test_geometric_coefficients_give_exact_radius(method: RadiusMethod) -> None:
    estimate = estimate_radius(geometric(3.0), method)
    assert estimate.extrapolated_radius == pytest.approx(3.0, rel=1e-9)
    assert estimate.method is method
    assert estimate.noise_floor_order is None
    assert estimate.N_used == 11
    assert estimate.caveats == []
    assert len(estimate.root_test_values) == 20


def test_regression_follows_the_envelope_of_oscillating_coefficients() -> None:
    N = 24
    coefficients = [mp.mpf(2) ** -n * (mp.mpf("1e-3") if n % 3 == 2 else 1) for n in range(N + 1)]
    expansion = TaylorExpansion(center=mp.mpc(2), coefficients=coefficients, coeff_error_bounds=[0.0] * (N + 1), N=N)
    estimate = estimate_radius(expansion, RadiusMethod.REGRESSION)
    assert estimate.extrapolated_radius == pytest.approx(2.0, rel=1e-6)
    assert estimate.fit_residual is not None
    assert estimate.fit_residual < 1e-9


def test_too_few_usable_coefficients() -> None:
    expansion = TaylorExpansion(
        center=mp.mpc(2),
        coefficients=[mp.mpf(3) ** -n for n in range(11)],
        coeff_error_bounds=[1.0] * 11,
        N=10,
    )
    with pytest.raises(InsufficientDataError):
        estimate_radius(expansion)


def test_noise_floor_order_is_reported() -> None:
    N = 20
    errors = [0.0 if n < 15 else 1.0 for n in range(N + 1)]
    expansion = TaylorExpansion(
        center=mp.mpc(2),
        coefficients=[mp.mpf(3) ** -n for n in range(N + 1)],
        coeff_error_bounds=errors,
        N=N,
    )
    estimate = estimate_radius(expansion, RadiusMethod.MAX_TAIL_ROOT)
    assert estimate.noise_floor_order == 15
    assert estimate.extrapolated_radius == pytest.approx(3.0, rel=1e-9)
    assert any("order 15" in caveat for caveat in estimate.caveats)


def test_superexponential_decay_is_flagged() -> None:
    N = 20
    expansion = TaylorExpansion(
        center=mp.mpc(2),
        coefficients=[1 / mp.factorial(n) for n in range(N + 1)],
        coeff_error_bounds=[0.0] * (N + 1),
        N=N,
    )
    estimate = estimate_radius(expansion, RadiusMethod.MAX_TAIL_ROOT)
    assert any("superexponential" in caveat for caveat in estimate.caveats)


def test_tail_dominated_orders_are_flagged() -> None:
    expansion = geometric(3.0, coeff_tail_bounds=[1.0] * 21, truncation_T=mp.mpf(1000))
    estimate = estimate_radius(expansion)
    assert any(caveat.startswith("truncation at T = 1000") for caveat in estimate.caveats)


def test_upper_hull() -> None:
    assert upper_hull([(0, 0), (1, 1), (2, 0)]) == [(0, 0), (1, 1), (2, 0)]
    assert upper_hull([(0, 0), (1, -1), (2, 0)]) == [(0, 0), (2, 0)]
    assert upper_hull([(0, 0), (1, 1), (2, 2)]) == [(0, 0), (2, 2)]
    assert upper_hull([(0, 5)]) == [(0, 5)]


def test_combined_coefficients() -> None:
    expansion = TaylorExpansion(center=mp.mpc(2), coefficients=[1, 2, 3], coeff_error_bounds=[0.1, 0.2, 0.3], N=2)
    assert expansion.combined_coefficients == [3, 10]
    assert expansion.combined_error_bounds == pytest.approx([0.3, 1.0])


def test_expansion_length_is_validated() -> None:
    with pytest.raises(ValueError, match="order 3"):
        TaylorExpansion(center=mp.mpc(2), coefficients=[1, 2], coeff_error_bounds=[0, 0], N=3)


def test_root_test_values() -> None:
    estimate = estimate_radius(geometric(5.0))
    for n, value in estimate.root_test_values:
        assert 1 <= n <= 20
        assert math.isclose(value, 5.0, rel_tol=1e-12)
