from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Final

from structlog import get_logger

from ._utils import get_env

logger = get_logger()


DEFAULT_CACHE_PATH: Final[Path] = Path("~/.cache/thetazeta/primes.cache").expanduser()

__all__ = (
    "DEFAULT_CACHE_PATH",
    "LogSettings",
    "PrecisionSettings",
    "PrimeSettings",
    "QuadratureSettings",
    "Settings",
    "ThetaSettings",
    "ZetaSettings",
    "get_settings",
)


@dataclass
class PrecisionSettings:
    """Working precision and tolerances shared by every evaluation."""

    DIGITS: int = field(default_factory=get_env("THETAZETA_DIGITS", 30))
    """Working decimal precision (at least 15)."""
    ABS_TOL: float = field(default_factory=get_env("THETAZETA_ABS_TOL", 1e-12))
    """Absolute tolerance requested from special functions and quadrature."""
    REL_TOL: float = field(default_factory=get_env("THETAZETA_REL_TOL", 1e-10))
    """Relative tolerance requested from special functions and quadrature."""
    MAX_ORDER: int = field(default_factory=get_env("THETAZETA_MAX_ORDER", 40))
    """Highest derivative order n accepted by the weighted integrals."""


@dataclass
class PrimeSettings:
    """Sieve and prime cache configuration."""

    CACHE_PATH: Path = field(default_factory=get_env("THETAZETA_CACHE", DEFAULT_CACHE_PATH))
    """Location of the checkpoint cache file."""
    SEGMENT_SIZE: int = field(default_factory=get_env("THETAZETA_SEGMENT_SIZE", 2**20))
    """Numbers covered by one sieve segment."""
    CHECKPOINT_STRIDE: int = field(default_factory=get_env("THETAZETA_CHECKPOINT_STRIDE", 2**16))
    """Distance between persisted (t, pi(t)) checkpoints."""
    MEMORY_BUDGET: int = field(default_factory=get_env("THETAZETA_MEMORY_BUDGET", 2 * 1024**3))
    """Upper bound in bytes for a sieve run (segment plus materialized primes)."""


@dataclass
class ZetaSettings:
    """Zeta evaluation knobs."""

    EM_ORDER: int = field(default_factory=get_env("THETAZETA_EM_ORDER", 10))
    """Number of Bernoulli correction terms in Euler-Maclaurin summation."""
    EM_EXTRA_TERMS: int = field(default_factory=get_env("THETAZETA_EM_EXTRA_TERMS", 20))
    """Direct terms beyond ceil(|Im z|) before the Euler-Maclaurin tail."""
    INTEGRAL_MAX_T: int = field(default_factory=get_env("THETAZETA_INTEGRAL_MAX_T", 2**15))
    """Largest truncation of the fractional-part integral."""
    NEAR_ZERO: float = field(default_factory=get_env("THETAZETA_NEAR_ZERO", 1e-6))
    """|zeta| below this makes the log-derivative decomposition refuse."""
    ZERO_ACCEPT: float = field(default_factory=get_env("THETAZETA_ZERO_ACCEPT", 1e-3))
    """|zeta| at a refined minimum must be below this to count as a zero."""
    ZERO_BRACKET: float = field(default_factory=get_env("THETAZETA_ZERO_BRACKET", 0.5))
    """Half-width of the search bracket around a starting ordinate."""
    ZERO_TOL: float = field(default_factory=get_env("THETAZETA_ZERO_TOL", 1e-8))
    """Bracket width at which golden-section refinement stops."""


@dataclass
class QuadratureSettings:
    """Quadrature engine knobs."""

    PANEL_WIDTH: float = field(default_factory=get_env("THETAZETA_PANEL_WIDTH", 1.0))
    """Largest Gauss-Legendre panel in u = ln t."""
    TAIL_MODEL: str = field(default_factory=get_env("THETAZETA_TAIL_MODEL", "unconditional"))
    """Growth model whose tail bound enters the error bound of theta-type integrals."""
    THETA_LOWER_LIMIT: int = field(default_factory=get_env("THETAZETA_THETA_LOWER_LIMIT", 2))
    """Lower limit of the theta integral (1 or 2)."""
    EXACT_PRIME_CUTOFF: int = field(default_factory=get_env("THETAZETA_EXACT_PRIME_CUTOFF", 2**12))
    """Primes up to this enter prime sums at working precision, larger ones in float64."""


@dataclass
class ThetaSettings:
    """Defaults for expansions and the b-scan."""

    EPSILON: float = field(default_factory=get_env("THETAZETA_EPSILON", 0.1))
    """Offset of the expansion centre to the right of Re z = 1."""
    ORDER: int = field(default_factory=get_env("THETAZETA_ORDER", 24))
    """Default highest Taylor order N."""
    PRIME_LIMIT: int = field(default_factory=get_env("THETAZETA_PRIME_LIMIT", 10**6))
    """Default prime table limit, also the default truncation T."""
    TAIL_WARN_RATIO: float = field(default_factory=get_env("THETAZETA_TAIL_WARN_RATIO", 0.1))
    """Warn when a tail bound exceeds this fraction of the value."""


@dataclass
class LogSettings:
    """Logger configuration"""

    LEVEL: int = field(default_factory=get_env("LOG_LEVEL", 30))
    """Stdlib log levels.

    Only emit logs at this level, or higher.
    """


@dataclass
class Settings:
    precision: PrecisionSettings = field(default_factory=PrecisionSettings)
    primes: PrimeSettings = field(default_factory=PrimeSettings)
    zeta: ZetaSettings = field(default_factory=ZetaSettings)
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)
    theta: ThetaSettings = field(default_factory=ThetaSettings)
    log: LogSettings = field(default_factory=LogSettings)

    @classmethod
    def from_env(cls, dotenv_filename: str = ".env") -> Settings:
        env_file = Path(f"{os.curdir}/{dotenv_filename}")
        if env_file.is_file():
            from dotenv import load_dotenv

            logger.debug("loading environment configuration", path=str(env_file))
            load_dotenv(env_file, override=True)
        return Settings()


@lru_cache(maxsize=1, typed=True)
def get_settings() -> Settings:
    return Settings.from_env()
