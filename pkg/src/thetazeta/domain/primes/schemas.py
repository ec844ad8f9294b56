from __future__ import annotations

from functools import cached_property

import numpy as np
import numpy.typing as npt

from thetazeta.config.base import get_settings
from thetazeta.config.schema import FrozenStruct
from thetazeta.lib.exceptions import ResourceError

from .utils import estimate_sieve_bytes, sieve_upto

__all__ = ("PrimeTable",)


class PrimeTable(FrozenStruct, frozen=True, dict=True):
    """Primes up to ``limit`` with (t, pi(t)) checkpoints every ``stride``.

    Only the checkpoints define the table; the primes themselves are sieved
    on first access and kept for the lifetime of the instance. Equality
    compares limit, stride and checkpoints.
    """

    limit: int
    stride: int
    checkpoints: tuple[tuple[int, int], ...]

    @classmethod
    def materialized(
        cls,
        limit: int,
        stride: int,
        checkpoints: tuple[tuple[int, int], ...],
        primes: npt.NDArray[np.int64],
    ) -> PrimeTable:
        """A table whose primes are already sieved."""
        table = cls(limit=limit, stride=stride, checkpoints=checkpoints)
        table.__dict__["primes"] = primes
        return table

    @cached_property
    def primes(self) -> npt.NDArray[np.int64]:
        """Every prime up to ``limit``, sieved within ``PrimeSettings.MEMORY_BUDGET``.

        Raises:
            ResourceError: The sieve would exceed the memory budget.
        """
        settings = get_settings().primes
        required = estimate_sieve_bytes(self.limit, settings.SEGMENT_SIZE)
        if required > settings.MEMORY_BUDGET:
            msg = (
                f"sieving the table to {self.limit} needs about {required} bytes, "
                f"over the budget of {settings.MEMORY_BUDGET} bytes"
            )
            raise ResourceError(msg)
        return sieve_upto(self.limit, settings.SEGMENT_SIZE)

    @property
    def is_materialized(self) -> bool:
        return "primes" in self.__dict__

    def primes_upto(self, bound: int) -> npt.NDArray[np.int64]:
        """Prefix of :attr:`primes` with every prime ``<= bound``."""
        primes = self.primes
        return primes[: int(np.searchsorted(primes, bound, side="right"))]
