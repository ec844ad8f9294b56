from __future__ import annotations

from math import isqrt

import mpmath as mp
import msgspec
import numpy as np
import pytest
from msgspec.structs import asdict

from thetazeta.domain.primes import PrimeTable, generate_primes, prime_count, sieve_segment
from thetazeta.lib.exceptions import DomainError, OutOfRangeError, ResourceError


def _trial_division_counts(limit: int) -> list[int]:
    counts = [0] * (limit + 1)
    running = 0
    for n in range(2, limit + 1):
        if all(n % d for d in range(2, isqrt(n) + 1)):
            running += 1
        counts[n] = running
    return counts


@pytest.mark.parametrize(("t", "expected"), [(10, 4), (1_000, 168), (2, 1), (1, 0), (0, 0)])
def test_prime_count_small(table_small: PrimeTable, t: int, expected: int) -> None:
    assert prime_count(table_small, t) == expected


def test_prime_count_known_values(table_mid: PrimeTable, table_large: PrimeTable) -> None:
    assert prime_count(table_mid, 100_000) == 9_592
    assert prime_count(table_large, 1_000_000) == 78_498


def test_prime_count_matches_trial_division(table_mid: PrimeTable) -> None:
    oracle = _trial_division_counts(100_000)
    rng = np.random.default_rng(20240611)
    for t in rng.integers(0, 100_001, size=200).tolist():
        assert prime_count(table_mid, t) == oracle[t]


def test_prime_count_counts_prime_at_its_own_point(table_small: PrimeTable) -> None:
    assert prime_count(table_small, 7) == 4
    assert prime_count(table_small, mp.mpf("6.999")) == 3
    assert prime_count(table_small, mp.mpf("7.5")) == 4


def test_prime_count_errors(table_small: PrimeTable) -> None:
    with pytest.raises(DomainError):
        prime_count(table_small, -1)
    with pytest.raises(OutOfRangeError):
        prime_count(table_small, 1_001)


def test_checkpoint_only_table_counts_by_gap_sieve(table_mid: PrimeTable) -> None:
    sparse = PrimeTable(limit=table_mid.limit, stride=table_mid.stride, checkpoints=table_mid.checkpoints)
    assert not sparse.is_materialized
    for t in (2, 65_535, 65_537, 70_001, 99_991, 100_000):
        assert prime_count(sparse, t) == prime_count(table_mid, t)
    assert not sparse.is_materialized


def test_checkpoints(table_small: PrimeTable) -> None:
    assert table_small.checkpoints == ((256, 54), (512, 97), (768, 135), (1_000, 168))


def test_tables_compare_by_checkpoints(table_small: PrimeTable) -> None:
    rebuilt = PrimeTable(limit=1_000, stride=256, checkpoints=table_small.checkpoints)
    assert rebuilt == table_small
    assert rebuilt.primes.tolist() == table_small.primes.tolist()
    assert rebuilt.is_materialized


def test_table_is_a_frozen_struct_of_its_checkpoints(table_small: PrimeTable) -> None:
    assert isinstance(table_small, msgspec.Struct)
    assert table_small.is_materialized
    assert asdict(table_small) == {
        "limit": 1_000,
        "stride": 256,
        "checkpoints": table_small.checkpoints,
    }
    with pytest.raises(AttributeError):
        table_small.limit = 2_000  # type: ignore[misc]


def test_sieve_segment() -> None:
    assert sieve_segment(10, 30).tolist() == [11, 13, 17, 19, 23, 29]
    assert sieve_segment(0, 3).tolist() == [2]
    assert sieve_segment(20, 20).tolist() == []


def test_segment_size_does_not_change_primes() -> None:
    assert generate_primes(5_000, segment_size=97).primes.tolist() == generate_primes(5_000).primes.tolist()


def test_primes_upto(table_small: PrimeTable) -> None:
    assert table_small.primes_upto(10).tolist() == [2, 3, 5, 7]
    assert len(table_small.primes_upto(1_000)) == 168


def test_generate_primes_rejects_small_limit() -> None:
    with pytest.raises(DomainError):
        generate_primes(1)


def test_generate_primes_respects_memory_budget() -> None:
    with pytest.raises(ResourceError, match="budget"):
        generate_primes(10_000_000, memory_budget=1_000)
