from __future__ import annotations

import os
from pathlib import Path
from typing import TYPE_CHECKING, Final, overload

if TYPE_CHECKING:
    from collections.abc import Callable

TRUE_VALUES: Final[frozenset[str]] = frozenset({"True", "true", "1", "yes", "YES", "Y", "y", "T", "t"})

ParseTypes = bool | int | float | str | Path


@overload
def get_env(key: str, default: bool) -> Callable[[], bool]: ...


@overload
def get_env(key: str, default: int) -> Callable[[], int]: ...


@overload
def get_env(key: str, default: float) -> Callable[[], float]: ...


@overload
def get_env(key: str, default: str) -> Callable[[], str]: ...


@overload
def get_env(key: str, default: Path) -> Callable[[], Path]: ...


def get_env(key: str, default: ParseTypes) -> Callable[[], ParseTypes]:
    return lambda: get_config_val(key=key, default=default)


@overload
def get_config_val(key: str, default: bool) -> bool: ...


@overload
def get_config_val(key: str, default: int) -> int: ...


@overload
def get_config_val(key: str, default: float) -> float: ...


@overload
def get_config_val(key: str, default: str) -> str: ...


@overload
def get_config_val(key: str, default: Path) -> Path: ...


def get_config_val(key: str, default: ParseTypes) -> ParseTypes:
    """Parse environment variables.

    The type of ``default`` decides how the raw string is parsed. Numbers
    accept anything ``int()`` / ``float()`` accept, so ``1e-12`` and ``1_000``
    both work.

    Args:
        key: Environment variable key
        default: Default value if key not found in environment

    Raises:
        ValueError: Raised when the configuration value cannot be parsed.

    Returns:
        Parsed value of the specified type
    """
    str_value = os.getenv(key)
    if str_value is None:
        return default
    value: str = str_value.strip()
    try:
        if type(default) is bool:
            return value in TRUE_VALUES
        if type(default) is int:
            return int(float(value)) if "e" in value.lower() else int(value)
        if type(default) is float:
            return float(value)
        if isinstance(default, Path):
            return Path(value).expanduser()
    except ValueError as e:
        msg = f"{key}={value!r} cannot be parsed as {type(default).__name__}."
        raise ValueError(msg) from e
    return value
