"""Checkpoint cache.

Format::

    THETAZETA-PRIMECACHE v1 limit=<n> stride=<s>
    <t>,<pi(t)>
    ...
    checksum=<sum of pi values mod 2^61-1>

Primes are not stored; a loaded table re-sieves on demand.
"""

from __future__ import annotations

import fcntl
import os
from pathlib import Path

from structlog import get_logger

from thetazeta.config.constants import CACHE_MAGIC, CACHE_VERSION, CHECKSUM_MODULUS
from thetazeta.lib.exceptions import CacheFormatError, CacheVersionError, ResourceError

from .schemas import PrimeTable
from .service import generate_primes

__all__ = ("checksum", "load_or_build", "load_table", "save_table")

logger = get_logger()


def checksum(checkpoints: tuple[tuple[int, int], ...]) -> int:
    return sum(count for _, count in checkpoints) % CHECKSUM_MODULUS


def save_table(table: PrimeTable, path: Path | str) -> Path:
    """Write the checkpoints of ``table`` to ``path``.

    The writer holds an exclusive ``flock`` on ``<path>.lock``, released by
    the OS when its process exits, while it fills a temporary file next to
    the destination and moves it into place.

    Raises:
        ResourceError: Another writer holds the lock.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lock_path = path.with_name(f"{path.name}.lock")
    with lock_path.open("a", encoding="ascii") as lock:
        try:
            fcntl.flock(lock.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
        except BlockingIOError as e:
            msg = f"prime cache {path} is being written by another process ({lock_path} is locked)"
            raise ResourceError(msg) from e
        partial = path.with_name(f"{path.name}.{os.getpid()}.tmp")
        try:
            with partial.open("w", encoding="ascii", newline="\n") as handle:
                handle.write(f"{CACHE_MAGIC} {CACHE_VERSION} limit={table.limit} stride={table.stride}\n")
                handle.writelines(f"{t},{count}\n" for t, count in table.checkpoints)
                handle.write(f"checksum={checksum(table.checkpoints)}\n")
            os.replace(partial, path)
        except BaseException:
            partial.unlink(missing_ok=True)
            raise
    logger.info("saved prime cache", path=str(path), limit=table.limit, checkpoints=len(table.checkpoints))
    return path


def _parse_header(line: str) -> tuple[int, int]:
    tokens = line.split()
    if len(tokens) != 4 or tokens[0] != CACHE_MAGIC:  # noqa: PLR2004
        msg = f"not a prime cache header: {line!r}"
        raise CacheFormatError(msg)
    if tokens[1] != CACHE_VERSION:
        msg = f"prime cache version {tokens[1]} is not supported (expected {CACHE_VERSION})"
        raise CacheVersionError(msg)
    try:
        fields = dict(token.split("=", 1) for token in tokens[2:])
        return int(fields["limit"]), int(fields["stride"])
    except (KeyError, ValueError) as e:
        msg = f"malformed prime cache header: {line!r}"
        raise CacheFormatError(msg) from e


def load_table(path: Path | str) -> PrimeTable:
    """Read a checkpoint cache written by :func:`save_table`.

    Raises:
        CacheFormatError: Corrupt header, body, checksum or a truncated file.
        CacheVersionError: The file was written by another format version.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="ascii").splitlines()
    except (OSError, UnicodeDecodeError) as e:
        msg = f"cannot read prime cache {path}: {e}"
        raise CacheFormatError(msg) from e
    if not lines:
        msg = f"prime cache {path} is empty"
        raise CacheFormatError(msg)
    limit, stride = _parse_header(lines[0])
    if len(lines) < 3 or not lines[-1].startswith("checksum="):  # noqa: PLR2004
        msg = f"prime cache {path} is truncated (no checksum line)"
        raise CacheFormatError(msg)
    try:
        checkpoints = tuple((int(t), int(count)) for t, count in (line.split(",") for line in lines[1:-1]))
        expected = int(lines[-1].removeprefix("checksum="))
    except ValueError as e:
        msg = f"malformed checkpoint line in prime cache {path}"
        raise CacheFormatError(msg) from e
    if checksum(checkpoints) != expected:
        msg = f"prime cache {path} checksum mismatch"
        raise CacheFormatError(msg)
    marks = [t for t, _ in checkpoints]
    if marks != sorted(set(marks)) or marks[-1] != limit:
        msg = f"prime cache {path} checkpoints are not ascending up to limit {limit}"
        raise CacheFormatError(msg)
    return PrimeTable(limit=limit, stride=stride, checkpoints=checkpoints)


def load_or_build(limit: int, path: Path | str) -> tuple[PrimeTable, bool]:
    """Reuse the cache at ``path`` when it covers ``limit``, otherwise sieve and save.

    Returns:
        The table and whether a sieve ran.
    """
    path = Path(path)
    if path.is_file():
        cached = load_table(path)
        if cached.limit >= limit:
            logger.debug("prime cache hit", path=str(path), limit=cached.limit)
            return cached, False
        logger.info("prime cache too small, extending", cached_limit=cached.limit, limit=limit)
    table = generate_primes(limit)
    save_table(table, path)
    return table, True
