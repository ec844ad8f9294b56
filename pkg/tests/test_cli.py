from __future__ import annotations

from pathlib import Path

import msgspec
import pandas as pd
import pytest
from click.testing import CliRunner
from pytest_mock import MockerFixture

from thetazeta.cli import thetazeta_group
from thetazeta.domain import counterexample
from thetazeta.domain.primes import cache as cache_module
from thetazeta.domain.theta import RadiusMethod


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def cache(tmp_path: Path) -> Path:
    return tmp_path / "primes.cache"


@pytest.fixture
def out(tmp_path: Path) -> Path:
    return tmp_path / "report.csv"


def read_report(path: Path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def provenance(path: Path) -> dict[str, object]:
    first = path.read_text(encoding="utf-8").splitlines()[0]
    assert first.startswith("# ")
    return msgspec.json.decode(first[2:])


def test_primes_builds_then_reuses_the_cache(runner: CliRunner, cache: Path, mocker: MockerFixture) -> None:
    spy = mocker.spy(cache_module, "generate_primes")
    result = runner.invoke(thetazeta_group, ["--cache", str(cache), "primes", "--limit", "1000"])
    assert result.exit_code == 0, result.output
    assert "limit=1000 pi=168" in result.output
    assert cache.exists()
    assert spy.call_count == 1

    again = runner.invoke(thetazeta_group, ["--cache", str(cache), "primes", "--limit", "1000"])
    assert again.exit_code == 0
    assert "limit=1000 pi=168" in again.output
    assert spy.call_count == 1


def test_primes_rejects_tiny_limit(runner: CliRunner, cache: Path) -> None:
    result = runner.invoke(thetazeta_group, ["--cache", str(cache), "primes", "--limit", "1"])
    assert result.exit_code == 2


def test_digits_below_machine_precision_are_rejected(runner: CliRunner, cache: Path) -> None:
    result = runner.invoke(thetazeta_group, ["--cache", str(cache), "--digits", "10", "primes", "--limit", "100"])
    assert result.exit_code == 2


def test_identity_at_the_pole_is_a_usage_error(runner: CliRunner, cache: Path) -> None:
    args = ["--cache", str(cache), "identities", "--eq", "6", "--z", "1", "--limit", "1000"]
    result = runner.invoke(thetazeta_group, args)
    assert result.exit_code == 2
    assert "PoleError" in result.output


def test_eq5_report_with_provenance(runner: CliRunner, cache: Path, out: Path) -> None:
    args = ["--cache", str(cache), "--out", str(out), "identities", "--eq", "5", "--z", "2", "--limit", "100000"]
    result = runner.invoke(thetazeta_group, args)
    assert result.exit_code == 0, result.output
    config = provenance(out)
    assert config["command"] == "identities"
    assert config["prime_limit"] == 100_000
    assert config["digits"] == 30
    frame = read_report(out)
    assert len(frame) == 1
    row = frame.iloc[0]
    assert row["identity"] == "eq5"
    assert row["prime_limit"] == 100_000
    assert bool(row["passed"])
    assert float(row["residual"]) <= float(row["truncation_bound"])


def test_eq5_fails_a_tight_tolerance(runner: CliRunner, cache: Path, out: Path) -> None:
    args = ["--cache", str(cache), "--out", str(out), "identities", "--eq", "5", "--z", "2", "--limit", "1000"]
    result = runner.invoke(thetazeta_group, [*args, "--tol", "1e-12"])
    assert result.exit_code == 1
    assert not bool(read_report(out).iloc[0]["passed"])


def test_json_report_is_a_plain_array(runner: CliRunner, cache: Path, tmp_path: Path) -> None:
    target = tmp_path / "report.json"
    args = ["--cache", str(cache), "--out", str(target), "--format", "json"]
    result = runner.invoke(thetazeta_group, [*args, "identities", "--eq", "5", "--z", "2,1", "--limit", "100000"])
    assert result.exit_code == 0, result.output
    rows = msgspec.json.decode(target.read_bytes())
    assert isinstance(rows, list)
    assert len(rows) == 1
    assert rows[0]["identity"] == "eq5"
    assert rows[0]["z"].endswith("j")
    assert "prime_zeta_tail" in rows[0]


@pytest.mark.slow
def test_eq7_default_grid(runner: CliRunner, cache: Path, out: Path) -> None:
    args = ["--cache", str(cache), "--out", str(out), "identities", "--eq", "7", "--grid", "default"]
    result = runner.invoke(thetazeta_group, [*args, "--limit", "100000", "--tol", "1"])
    assert result.exit_code == 0, result.output
    frame = read_report(out)
    assert len(frame) == 3
    assert "entire_term_at_one_minus_ln2" in frame.columns


def test_scan_default_b_grid(runner: CliRunner, cache: Path, out: Path) -> None:
    args = ["--cache", str(cache), "--out", str(out), "scan", "--limit", "1000", "--N", "12", "--T", "1000"]
    result = runner.invoke(thetazeta_group, args)
    assert result.exit_code == 0, result.output
    frame = read_report(out)
    assert len(frame) == 21
    assert frame["b"].tolist()[:3] == [0.0, 0.5, 1.0]
    assert frame["b"].iloc[-1] == 10.0
    assert set(frame["method"]) == {"max_tail_root"}
    assert frame["inside_3pi"].tolist()[:19] == [True] * 19
    assert not frame["inside_3pi"].iloc[-1]
    assert frame["inside_4pi"].all()
    config = provenance(out)
    assert config["b_grid"] == [0.0, 10.0, 0.5]
    assert config["N"] == 12


def test_scan_with_calibration(runner: CliRunner, cache: Path, out: Path) -> None:
    args = ["--cache", str(cache), "--out", str(out), "scan", "--limit", "1000", "--N", "12", "--T", "1000"]
    result = runner.invoke(thetazeta_group, [*args, "--b", "2", "--calibrate"])
    assert result.exit_code == 0, result.output
    assert "calibration" in result.output
    assert len(read_report(out)) == 1


def test_calibration_uses_regression_whatever_the_scan_method(
    runner: CliRunner,
    cache: Path,
    out: Path,
    mocker: MockerFixture,
) -> None:
    spy = mocker.spy(counterexample, "calibrate")
    args = ["--cache", str(cache), "--out", str(out), "scan", "--limit", "1000", "--N", "12", "--T", "1000"]
    result = runner.invoke(thetazeta_group, [*args, "--b", "2", "--method", "max_tail_root", "--calibrate"])
    assert result.exit_code == 0, result.output
    assert "calibration (regression)" in result.output
    assert spy.call_args.args[-1] == RadiusMethod.REGRESSION
    assert spy.spy_return.passed
    assert set(read_report(out)["method"]) == {"max_tail_root"}


def test_scan_rejects_bad_grid(runner: CliRunner, cache: Path) -> None:
    result = runner.invoke(thetazeta_group, ["--cache", str(cache), "scan", "--b", "5:1:0.5", "--limit", "1000"])
    assert result.exit_code == 2


def test_zeros(runner: CliRunner, cache: Path, out: Path) -> None:
    result = runner.invoke(thetazeta_group, ["--cache", str(cache), "--out", str(out), "zeros"])
    assert result.exit_code == 0, result.output
    frame = read_report(out)
    assert len(frame) == 10
    assert frame["flagged"].tolist() == [False] * 5 + [True] + [False] * 4


def test_counterexample_rejects_large_gamma(runner: CliRunner, cache: Path) -> None:
    result = runner.invoke(thetazeta_group, ["--cache", str(cache), "counterexample", "--gamma", "0.3"])
    assert result.exit_code == 2
    assert "DomainError" in result.output


def test_counterexample_with_near_pole_row(runner: CliRunner, cache: Path, out: Path) -> None:
    args = ["--cache", str(cache), "--out", str(out), "counterexample", "--z", "2", "--near-pole"]
    result = runner.invoke(thetazeta_group, args)
    assert result.exit_code == 0, result.output
    frame = read_report(out)
    assert len(frame) == 2
    assert pd.isna(frame["error"].iloc[0])
    assert frame["error"].iloc[1].startswith("PoleError")
    assert float(frame["residual"].iloc[0]) < 1e-8


def test_theta_rows_are_reproducible(runner: CliRunner, cache: Path, out: Path) -> None:
    args = ["--cache", str(cache), "--out", str(out), "theta", "--z", "2", "--N", "1", "--limit", "1000"]
    first = runner.invoke(thetazeta_group, args)
    assert first.exit_code == 0, first.output
    content = out.read_bytes()
    second = runner.invoke(thetazeta_group, args)
    assert second.exit_code == 0
    assert out.read_bytes() == content
    frame = read_report(out)
    assert frame["n"].tolist() == [0, 1]
    assert {"tail_square_root", "tail_unconditional"} <= set(frame.columns)
