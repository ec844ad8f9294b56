from __future__ import annotations

from math import isqrt, log

import numpy as np
import numpy.typing as npt

from thetazeta.config.constants import STEP_DENSITY_CONSTANT

__all__ = ("base_primes", "estimate_sieve_bytes", "sieve_segment", "sieve_upto")

_EMPTY = np.empty(0, dtype=np.int64)


def estimate_sieve_bytes(limit: int, segment_size: int) -> int:
    """Bytes held by a sieve run: one boolean segment plus the int64 prime array."""
    prime_bound = STEP_DENSITY_CONSTANT * limit / log(limit) if limit > 2 else 1  # noqa: PLR2004
    base_bound = isqrt(limit) + 1
    return segment_size + 8 * int(prime_bound) + base_bound


def base_primes(limit: int) -> npt.NDArray[np.int64]:
    """Primes up to and including ``limit`` by a plain sieve."""
    if limit < 2:  # noqa: PLR2004
        return _EMPTY
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p : limit + 1 : p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def sieve_segment(
    low: int,
    high: int,
    base: npt.NDArray[np.int64] | None = None,
) -> npt.NDArray[np.int64]:
    """Primes in the half-open range ``[low, high)``.

    Args:
        low: First number of the segment.
        high: One past the last number of the segment.
        base: Primes up to at least ``isqrt(high - 1)``; computed when omitted.

    Returns:
        Ascending int64 array.
    """
    low = max(low, 2)
    if high <= low:
        return _EMPTY
    if base is None:
        base = base_primes(isqrt(high - 1))
    mask = np.ones(high - low, dtype=bool)
    for p in base.tolist():
        square = p * p
        if square >= high:
            break
        start = max(square, -(-low // p) * p)
        mask[start - low :: p] = False
    return np.flatnonzero(mask).astype(np.int64) + low


def sieve_upto(limit: int, segment_size: int = 2**20) -> npt.NDArray[np.int64]:
    """All primes ``<= limit``, sieved one segment at a time."""
    if limit < 2:  # noqa: PLR2004
        return _EMPTY
    base = base_primes(isqrt(limit))
    chunks = [
        sieve_segment(low, min(low + segment_size, limit + 1), base) for low in range(2, limit + 1, segment_size)
    ]
    return np.concatenate(chunks)
