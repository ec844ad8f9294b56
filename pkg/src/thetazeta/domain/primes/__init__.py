from __future__ import annotations

from .cache import load_or_build, load_table, save_table
from .schemas import PrimeTable
from .service import generate_primes, prime_count
from .utils import sieve_segment

__all__ = (
    "PrimeTable",
    "generate_primes",
    "load_or_build",
    "load_table",
    "prime_count",
    "save_table",
    "sieve_segment",
)
