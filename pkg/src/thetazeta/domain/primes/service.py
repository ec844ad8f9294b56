from __future__ import annotations

import bisect
from math import isqrt
from typing import Any

import mpmath as mp
import numpy as np
from structlog import get_logger

from thetazeta.config.base import get_settings
from thetazeta.lib.exceptions import DomainError, OutOfRangeError, ResourceError

from .schemas import PrimeTable
from .utils import base_primes, estimate_sieve_bytes, sieve_segment, sieve_upto

__all__ = ("build_checkpoints", "estimate_sieve_bytes", "generate_primes", "prime_count")

logger = get_logger()


def build_checkpoints(primes: np.ndarray[Any, Any], limit: int, stride: int) -> tuple[tuple[int, int], ...]:
    """(t, pi(t)) at every multiple of ``stride`` up to ``limit`` and at ``limit`` itself."""
    ts = list(range(stride, limit + 1, stride))
    if not ts or ts[-1] != limit:
        ts.append(limit)
    counts = np.searchsorted(primes, np.asarray(ts, dtype=np.int64), side="right")
    return tuple((t, int(c)) for t, c in zip(ts, counts.tolist(), strict=True))


def generate_primes(
    limit: int,
    *,
    segment_size: int | None = None,
    stride: int | None = None,
    memory_budget: int | None = None,
) -> PrimeTable:
    """Sieve every prime up to ``limit``.

    Args:
        limit: Largest number sieved.
        segment_size: Numbers per sieve segment (``PrimeSettings.SEGMENT_SIZE``).
        stride: Checkpoint spacing (``PrimeSettings.CHECKPOINT_STRIDE``).
        memory_budget: Byte budget for the run (``PrimeSettings.MEMORY_BUDGET``).

    Raises:
        DomainError: ``limit < 2``.
        ResourceError: The estimated footprint exceeds the budget.

    Returns:
        A materialized, immutable prime table.
    """
    settings = get_settings().primes
    segment_size = segment_size or settings.SEGMENT_SIZE
    stride = stride or settings.CHECKPOINT_STRIDE
    memory_budget = memory_budget or settings.MEMORY_BUDGET
    if limit < 2:  # noqa: PLR2004
        msg = f"prime table limit must be at least 2, got {limit}"
        raise DomainError(msg)
    if segment_size < 1 or stride < 1:
        msg = f"segment size and checkpoint stride must be positive, got {segment_size} and {stride}"
        raise DomainError(msg)
    required = estimate_sieve_bytes(limit, segment_size)
    if required > memory_budget:
        msg = (
            f"sieving to {limit} needs about {required} bytes with segment size {segment_size}, "
            f"over the budget of {memory_budget} bytes"
        )
        raise ResourceError(msg)
    primes = sieve_upto(limit, segment_size)
    checkpoints = build_checkpoints(primes, limit, stride)
    logger.info("sieved primes", limit=limit, count=len(primes), segment_size=segment_size, stride=stride)
    return PrimeTable.materialized(limit, stride, checkpoints, primes)


def _floor(t: Any) -> int:
    if isinstance(t, int):
        return t
    return int(mp.floor(t))


def prime_count(table: PrimeTable, t: Any) -> int:
    """Exact pi(t) = pi(floor(t)), counting p itself at t = p.

    Uses the sieved primes when the table holds them; otherwise starts from
    the nearest checkpoint and sieves only the gap to ``t``.

    Raises:
        DomainError: ``t`` is negative.
        OutOfRangeError: ``t`` is beyond the table limit.
    """
    if t < 0:
        msg = f"pi(t) needs t >= 0, got {t}"
        raise DomainError(msg)
    if t > table.limit:
        msg = f"t = {t} exceeds the prime table limit {table.limit}; extend the table"
        raise OutOfRangeError(msg)
    n = _floor(t)
    if n < 2:  # noqa: PLR2004
        return 0
    if table.is_materialized:
        return int(np.searchsorted(table.primes, n, side="right"))
    marks = [point for point, _ in table.checkpoints]
    index = bisect.bisect_right(marks, n)
    below = table.checkpoints[index - 1] if index > 0 else (1, 0)
    above = table.checkpoints[index] if index < len(marks) else None
    base = base_primes(isqrt(table.limit))
    if above is not None and above[0] - n < n - below[0]:
        return above[1] - len(sieve_segment(n + 1, above[0] + 1, base))
    return below[1] + len(sieve_segment(below[0] + 1, n + 1, base))
