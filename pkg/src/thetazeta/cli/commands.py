from __future__ import annotations

import functools
import sys
from collections.abc import Callable
from pathlib import Path
from typing import TYPE_CHECKING, Any, ParamSpec, TypeVar

import click

from thetazeta.config.base import get_settings

if TYPE_CHECKING:
    from thetazeta.cli.output import RunConfig
    from thetazeta.domain.primes import PrimeTable
    from thetazeta.domain.quadrature import PrecisionConfig

P = ParamSpec("P")
R = TypeVar("R")

__all__ = ("thetazeta_group",)


class State:
    """Global options shared by every subcommand."""

    def __init__(self, digits: int | None, cache: Path, out: Path | None, output_format: str) -> None:
        self.digits = digits
        self.cache = cache
        self.out = out
        self.output_format = output_format

    def precision(self) -> PrecisionConfig:
        from thetazeta.domain.quadrature import PrecisionConfig

        return PrecisionConfig.from_settings(digits=self.digits)

    def run_config(self, command: str, **values: Any) -> RunConfig:
        from thetazeta.cli.output import OutputFormat, RunConfig

        cfg = self.precision()
        return RunConfig(
            command=command,
            digits=cfg.digits,
            abs_tol=cfg.abs_tol,
            rel_tol=cfg.rel_tol,
            output_format=OutputFormat(self.output_format),
            output_path=str(self.out) if self.out is not None else None,
            cache_path=str(self.cache),
            **values,
        )

    def table(self, limit: int) -> PrimeTable:
        from thetazeta.domain.primes import load_or_build

        table, _ = load_or_build(limit, self.cache)
        return table


def exit_on_error(func: Callable[P, R]) -> Callable[P, R]:
    """Report package errors on stderr and exit with their mapped code."""

    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        from rich.console import Console

        from thetazeta.lib.exceptions import ThetaZetaError

        try:
            return func(*args, **kwargs)
        except ThetaZetaError as e:
            Console(stderr=True).print(f"[red]{type(e).__name__}[/red]: {e}", highlight=False)
            sys.exit(e.exit_code)

    return wrapper


def _fail_unless(ok: bool, message: str) -> None:
    from rich.console import Console

    from thetazeta.config.constants import EXIT_TOLERANCE

    if not ok:
        Console(stderr=True).print(f"[yellow]{message}[/yellow]", highlight=False)
        sys.exit(EXIT_TOLERANCE)


@click.group(name="thetazeta", help="Numerical lab for theta, zeta and prime sums.")
@click.option("--digits", type=click.IntRange(min=15), default=None, help="Working precision in decimal digits.")
@click.option(
    "--cache",
    type=click.Path(dir_okay=False, path_type=Path),
    envvar="THETAZETA_CACHE",
    default=None,
    help="Prime cache file.",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Report file (stdout if unset).",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
    help="Report format.",
)
@click.option("-v", "--verbose", is_flag=True, default=False, help="Log at debug level.")
@click.pass_context
def thetazeta_group(
    ctx: click.Context,
    digits: int | None,
    cache: Path | None,
    out: Path | None,
    output_format: str,
    verbose: bool,
) -> None:
    """Numerical lab for theta, zeta and prime sums."""
    import logging

    from thetazeta.config.app import configure_logging

    configure_logging(logging.DEBUG if verbose else None)
    ctx.obj = State(digits, cache or get_settings().primes.CACHE_PATH, out, output_format)


@thetazeta_group.command(name="primes", help="Build or extend the prime cache.")
@click.option("--limit", type=int, required=True, help="Largest number covered.")
@click.pass_obj
@exit_on_error
def primes(state: State, limit: int) -> None:
    """Sieve (or reuse the cache) up to ``limit`` and print the count."""
    from thetazeta.domain.primes import prime_count

    if limit < 2:
        msg = f"limit must be at least 2, got {limit}"
        raise click.BadParameter(msg, param_hint="--limit")
    table = state.table(limit)
    click.echo(f"limit={limit} pi={prime_count(table, limit)}")


@thetazeta_group.command(name="identities", help="Check the prime-sum identities.")
@click.option("--eq", "equation", type=click.Choice(["5", "6", "7"]), required=True, help="Identity to check.")
@click.option("--z", "points", multiple=True, help="Evaluation point as re or re,im (repeatable).")
@click.option("--grid", type=click.Choice(["default"]), default=None, help="Use the built-in grid.")
@click.option("--tol", type=float, default=1e-5, show_default=True, help="Largest accepted residual.")
@click.option("--limit", type=int, default=None, help="Prime limit, also the integral truncation T.")
@click.pass_obj
@exit_on_error
def identities(
    state: State,
    equation: str,
    points: tuple[str, ...],
    grid: str | None,
    tol: float,
    limit: int | None,
) -> None:
    """One row per point; exit 1 when a residual reaches ``--tol``."""
    from thetazeta.cli.output import write_rows
    from thetazeta.domain.prime_series import IdentityId, check_eq5, check_eq6, check_eq7_holomorphy, default_grid

    identity = {"5": IdentityId.EQ5, "6": IdentityId.EQ6, "7": IdentityId.EQ7_HOLOMORPHY}[equation]
    limit = limit or get_settings().theta.PRIME_LIMIT
    cfg = state.precision()
    zs: list[Any] = list(points) if points and grid is None else default_grid(identity)
    table = state.table(limit)
    if identity is IdentityId.EQ5:
        reports = [check_eq5(z, table, cfg, limit) for z in zs]
    elif identity is IdentityId.EQ6:
        reports = [check_eq6(z, table, cfg, limit, limit) for z in zs]
    else:
        reports = check_eq7_holomorphy(zs, table, cfg, limit, limit)
    rows = [
        {
            "identity": report.identity_id,
            "z": report.z,
            "lhs": report.lhs,
            "rhs": report.rhs,
            "residual": report.residual,
            "truncation_bound": report.truncation_bound,
            "prime_limit": report.prime_limit,
            "T": report.integral_T,
            "passed": report.residual < tol,
            **{key: value for key, value in report.diagnostics.items() if not isinstance(value, dict)},
        }
        for report in reports
    ]
    write_rows(rows, state.run_config("identities", prime_limit=limit, T=float(limit)))
    worst = max(report.residual for report in reports)
    _fail_unless(worst < tol, f"largest residual {worst:.3g} is not below {tol:g}")


@thetazeta_group.command(name="scan", help="Radius estimates of theta along a = 1 + eps + ib.")
@click.option("--eps", "epsilon", type=float, default=None, help="Offset to the right of Re z = 1.")
@click.option("--b", "b_grid", default="0:10:0.5", show_default=True, help="b values as min:max:step.")
@click.option("--N", "order", type=int, default=None, help="Highest Taylor order.")
@click.option("--T", "truncation", type=float, default=None, help="Truncation of the theta integral.")
@click.option("--limit", type=int, default=None, help="Prime limit.")
@click.option(
    "--method",
    type=click.Choice(["regression", "max_tail_root"]),
    default="max_tail_root",
    show_default=True,
    help="Radius estimator for the scan; calibration always uses regression.",
)
@click.option("--calibrate", is_flag=True, default=False, help="Calibrate the estimator on known poles first.")
@click.pass_obj
@exit_on_error
def scan(
    state: State,
    epsilon: float | None,
    b_grid: str,
    order: int | None,
    truncation: float | None,
    limit: int | None,
    method: str,
    calibrate: bool,
) -> None:
    """One row per b with the estimate and its provenance."""
    from thetazeta.cli.output import parse_grid, write_rows
    from thetazeta.domain.theta import task1_scan

    settings = get_settings().theta
    epsilon = epsilon if epsilon is not None else settings.EPSILON
    order = order if order is not None else settings.ORDER
    limit = limit or settings.PRIME_LIMIT
    T = truncation if truncation is not None else float(limit)
    triple, b_values = parse_grid(b_grid)
    cfg = state.precision()
    if calibrate:
        _calibrate_or_exit(cfg)
    table = state.table(limit)
    result = task1_scan(epsilon, b_values, order, table, cfg, T, method)
    rows = [
        {
            "b": row.b,
            "epsilon": row.epsilon,
            "N_used": row.estimate.N_used if row.estimate else None,
            "radius_estimate": row.estimate.extrapolated_radius if row.estimate else None,
            "method": method,
            "noise_floor_order": row.estimate.noise_floor_order if row.estimate else None,
            "T": T,
            "prime_limit": limit,
            "digits": cfg.digits,
            "inside_3pi": row.inside_3pi,
            "inside_4pi": row.inside_4pi,
            "error": row.error,
        }
        for row in result
    ]
    write_rows(
        rows,
        state.run_config("scan", prime_limit=limit, T=T, N=order, epsilon=epsilon, b_grid=triple),
    )


def _calibrate_or_exit(cfg: PrecisionConfig) -> None:
    from rich.console import Console

    from thetazeta.domain.counterexample import CounterexampleSpec, calibrate
    from thetazeta.domain.theta import RadiusMethod

    report = calibrate(2, CounterexampleSpec(gamma=0.2), 20, cfg, RadiusMethod.REGRESSION)
    Console(stderr=True).print(
        f"calibration ({RadiusMethod.REGRESSION}): estimate {report.estimate} "
        f"against {report.ground_truth:.6g} "
        f"(relative error {report.relative_error})",
        highlight=False,
    )
    _fail_unless(report.passed, f"calibration missed the {report.tolerance:.0%} tolerance; scan refused")


@thetazeta_group.command(name="zeros", help="Refine the listed zeros on the critical line.")
@click.option("--max-im", type=float, default=60.0, show_default=True, help="Largest listed ordinate refined.")
@click.pass_obj
@exit_on_error
def zeros(state: State, max_im: float) -> None:
    """Listed value, refined value, |zeta| there and the disagreement flag."""
    from thetazeta.cli.output import write_rows
    from thetazeta.domain.zeta import refine_listed_zeros

    rows = [
        {
            "listed_value": row.listed,
            "refined_value": row.refined,
            "abs_zeta": row.abs_zeta,
            "flagged": row.flagged,
        }
        for row in refine_listed_zeros(max_im, state.precision())
    ]
    write_rows(rows, state.run_config("zeros"))


@thetazeta_group.command(name="counterexample", help="Closed form against quadrature for the oscillating example.")
@click.option("--gamma", type=float, default=0.2, show_default=True, help="Exponent gamma (below 1/4).")
@click.option("--z", "points", multiple=True, help="Evaluation point as re or re,im (default: 4x4 grid).")
@click.option("--T", "truncation", type=float, default=None, help="Truncation (default: tail below abs_tol).")
@click.option("--tol", type=float, default=1e-8, show_default=True, help="Largest accepted residual.")
@click.option("--N", "order", type=int, default=20, show_default=True, help="Order of the calibration run.")
@click.option("--near-pole", is_flag=True, default=False, help="Add a point next to the upper pole.")
@click.pass_obj
@exit_on_error
def counterexample(
    state: State,
    gamma: float,
    points: tuple[str, ...],
    truncation: float | None,
    tol: float,
    order: int,
    near_pole: bool,
) -> None:
    """Comparison rows plus a calibration summary on stderr."""
    import mpmath as mp
    from rich.console import Console

    from thetazeta.cli.output import write_rows
    from thetazeta.domain.counterexample import CounterexampleSpec, calibrate, compare_grid, default_comparison_grid

    spec = CounterexampleSpec(gamma=gamma)
    cfg = state.precision()
    zs: list[Any] = list(points) or default_comparison_grid()
    if near_pole:
        zs.append(spec.pole_pair[0] + mp.mpf("1e-12"))
    rows = [
        {
            "z": row.z,
            "gamma": row.gamma,
            "closed": row.closed,
            "numeric": row.numeric,
            "residual": row.residual,
            "error_bound": row.error_bound,
            "T": row.truncation_T,
            "error": row.error,
        }
        for row in compare_grid(zs, spec, cfg, truncation)
    ]
    write_rows(rows, state.run_config("counterexample", N=order, T=truncation))
    report = calibrate(2, spec, order, cfg)
    Console(stderr=True).print(
        f"calibration at a = 2: estimate {report.estimate} against {report.ground_truth:.6g}, "
        f"passed={report.passed}",
        highlight=False,
    )
    residuals = [row["residual"] for row in rows if row["residual"] is not None]
    worst = max(residuals, default=0.0)
    _fail_unless(worst < tol, f"largest residual {worst:.3g} is not below {tol:g}")
    _fail_unless(report.passed, "radius calibration missed its tolerance")


@thetazeta_group.command(name="theta", help="Evaluate theta and its derivatives at one point.")
@click.option("--z", "point", required=True, help="Evaluation point as re or re,im.")
@click.option("--N", "order", type=int, default=0, show_default=True, help="Highest derivative order.")
@click.option("--T", "truncation", type=float, default=None, help="Truncation (default: the prime limit).")
@click.option("--limit", type=int, default=None, help="Prime limit.")
@click.pass_obj
@exit_on_error
def theta(state: State, point: str, order: int, truncation: float | None, limit: int | None) -> None:
    """One row per order n = 0..N with value, numerical error and both tail bounds."""
    from thetazeta.cli.output import write_rows
    from thetazeta.domain.theta import theta_orders

    limit = limit or get_settings().theta.PRIME_LIMIT
    T = truncation if truncation is not None else float(limit)
    table = state.table(limit)
    rows = [
        {
            "z": point,
            "n": n,
            "value": result.value,
            "error_bound": result.error_bound,
            "discretization_error": result.discretization_error,
            **{f"tail_{model}": bound for model, bound in sorted(result.tail_bounds.items())},
            "T": T,
            "prime_limit": limit,
        }
        for n, result in enumerate(theta_orders(point, order, table, state.precision(), T))
    ]
    write_rows(rows, state.run_config("theta", prime_limit=limit, T=T, N=order))
