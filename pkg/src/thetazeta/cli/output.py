"""Report writing for the command line.

Rows are dicts whose numbers are already rendered at a fixed number of
significant digits, so identical runs write identical bytes.
"""

from __future__ import annotations

import io
import math
from enum import StrEnum
from pathlib import Path
from typing import Any

import click
import msgspec
import pandas as pd

from thetazeta.config.schema import BaseStruct
from thetazeta.lib.exceptions import ConfigError
from thetazeta.lib.numeric import format_number

__all__ = ("OutputFormat", "RunConfig", "format_row", "parse_grid", "render", "write_rows")


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


class RunConfig(BaseStruct):
    """Everything that determines a command's output, written as provenance."""

    command: str
    digits: int
    abs_tol: float
    rel_tol: float
    output_format: OutputFormat = OutputFormat.CSV
    prime_limit: int | None = None
    T: float | None = None
    N: int | None = None
    epsilon: float | None = None
    b_grid: tuple[float, float, float] | None = None
    """(min, max, step) of the b values, endpoints included."""
    output_path: str | None = None
    cache_path: str | None = None

    def __post_init__(self) -> None:
        if self.b_grid is not None:
            low, high, step = self.b_grid
            if step <= 0 or high < low:
                msg = f"b grid needs min <= max and a positive step, got {low}:{high}:{step}"
                raise ConfigError(msg)


def parse_grid(text: str) -> tuple[tuple[float, float, float], list[float]]:
    """Parse ``min:max:step`` into the triple and its values, endpoints included.

    A single number is a one-point grid.

    Raises:
        ConfigError: Malformed text, a non-positive step or ``max < min``.
    """
    parts = text.split(":")
    try:
        numbers = [float(part) for part in parts]
    except ValueError as e:
        msg = f"cannot parse grid {text!r}; expected min:max:step"
        raise ConfigError(msg) from e
    if len(numbers) == 1:
        numbers = [numbers[0], numbers[0], 1.0]
    if len(numbers) != 3:
        msg = f"cannot parse grid {text!r}; expected min:max:step"
        raise ConfigError(msg)
    low, high, step = numbers
    if step <= 0 or high < low:
        msg = f"b grid needs min <= max and a positive step, got {text!r}"
        raise ConfigError(msg)
    count = math.floor((high - low) / step + 1e-9) + 1
    values = [round(low + i * step, 12) for i in range(count)]
    return (low, high, step), values


def _cell(value: Any, digits: int) -> Any:
    if isinstance(value, StrEnum):
        return value.value
    if value is None or isinstance(value, (bool, str, int)):
        return value
    return format_number(value, digits)


def format_row(row: dict[str, Any], digits: int) -> dict[str, Any]:
    """Render every number in ``row`` at ``digits`` significant digits."""
    return {key: _cell(value, digits) for key, value in row.items()}


def render(rows: list[dict[str, Any]], config: RunConfig) -> str:
    """CSV with a ``# `` provenance line, or a JSON array of the same rows."""
    formatted = [format_row(row, config.digits) for row in rows]
    if config.output_format is OutputFormat.JSON:
        return msgspec.json.encode(formatted).decode() + "\n"
    buffer = io.StringIO()
    buffer.write("# " + msgspec.json.encode(config.to_dict()).decode() + "\n")
    pd.DataFrame(formatted).to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def write_rows(rows: list[dict[str, Any]], config: RunConfig) -> None:
    """Write to ``config.output_path``, or stdout when unset."""
    text = render(rows, config)
    if config.output_path is None:
        click.echo(text, nl=False)
        return
    path = Path(config.output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
