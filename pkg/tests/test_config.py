from __future__ import annotations

from pathlib import Path

import mpmath as mp
import pytest

from thetazeta.config.base import Settings, get_settings
from thetazeta.domain.quadrature import PrecisionConfig
from thetazeta.lib.exceptions import (
    CacheVersionError,
    ConfigError,
    DomainError,
    NotAZeroError,
    PoleError,
    ResourceError,
    ThetaZetaError,
)
from thetazeta.lib.numeric import as_float, format_number, to_complex


def test_settings_defaults() -> None:
    settings = Settings()
    assert settings.precision.DIGITS == 30
    assert settings.quadrature.TAIL_MODEL == "unconditional"
    assert settings.quadrature.THETA_LOWER_LIMIT == 2
    assert settings.theta.EPSILON == 0.1


def test_settings_read_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.setenv("THETAZETA_DIGITS", "45")
    monkeypatch.setenv("THETAZETA_PRIME_LIMIT", "1e7")
    monkeypatch.setenv("THETAZETA_CACHE", str(tmp_path / "other.cache"))
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.precision.DIGITS == 45
    assert settings.theta.PRIME_LIMIT == 10_000_000
    assert settings.primes.CACHE_PATH == tmp_path / "other.cache"
    assert PrecisionConfig.from_settings().digits == 45


def test_unparsable_setting_names_the_variable(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("THETAZETA_EXACT_PRIME_CUTOFF", "many")
    with pytest.raises(ValueError, match="THETAZETA_EXACT_PRIME_CUTOFF=.many. cannot be parsed as int"):
        Settings()
    monkeypatch.setenv("THETAZETA_EXACT_PRIME_CUTOFF", "1e3")
    assert Settings().quadrature.EXACT_PRIME_CUTOFF == 1_000


def test_precision_config_overrides_skip_none() -> None:
    cfg = PrecisionConfig.from_settings(digits=None, abs_tol=1e-9)
    assert cfg.digits == 30
    assert cfg.abs_tol == 1e-9


@pytest.mark.parametrize(
    "values",
    [{"digits": 10}, {"abs_tol": 0.0}, {"rel_tol": -1.0}, {"max_order": -1}],
)
def test_precision_config_rejects_invalid(values: dict[str, float]) -> None:
    with pytest.raises(ConfigError):
        PrecisionConfig(**values)  # type: ignore[arg-type]


def test_exit_codes() -> None:
    assert DomainError.exit_code == 2
    assert PoleError("x").exit_code == 2
    assert NotAZeroError.exit_code == 1
    assert ResourceError.exit_code == 3
    assert CacheVersionError.exit_code == 3
    assert issubclass(PoleError, DomainError)


def test_error_message() -> None:
    error = ConfigError("unknown tail model")
    assert str(error) == "unknown tail model"
    assert repr(error) == "ConfigError - unknown tail model"
    assert isinstance(error, ThetaZetaError)


def test_to_complex_parses_text() -> None:
    assert to_complex("2,1") == mp.mpc(2, 1)
    assert to_complex(" 1.5 ") == mp.mpc(1.5, 0)
    assert to_complex(3) == mp.mpc(3, 0)
    with pytest.raises(ValueError, match="cannot parse"):
        to_complex("1,2,3")


def test_format_number_is_fixed_width() -> None:
    assert format_number(mp.mpc(1, -2), 5) == "1.0000-2.0000j"
    assert format_number(mp.mpc(1, 0), 5) == "1.0000"
    assert format_number(7, 5) == "7"
    assert format_number(True, 5) == "true"


def test_as_float_saturates() -> None:
    assert as_float(mp.mpf("1e400")) == float("inf")
    assert as_float(mp.mpc(3, 4)) == 5.0
