from __future__ import annotations

from collections.abc import Iterator
from pathlib import Path

import pytest
import structlog

from thetazeta.config.base import get_settings
from thetazeta.domain.primes import PrimeTable, generate_primes
from thetazeta.domain.quadrature import PrecisionConfig


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Iterator[None]:
    monkeypatch.setenv("THETAZETA_CACHE", str(tmp_path / "primes.cache"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    structlog.reset_defaults()


@pytest.fixture
def cfg() -> PrecisionConfig:
    return PrecisionConfig(digits=30, abs_tol=1e-12, rel_tol=1e-10, max_order=40)


@pytest.fixture(scope="session")
def table_small() -> PrimeTable:
    return generate_primes(1_000, stride=256)


@pytest.fixture(scope="session")
def table_mid() -> PrimeTable:
    return generate_primes(100_000)


@pytest.fixture(scope="session")
def table_large() -> PrimeTable:
    return generate_primes(1_000_000)
