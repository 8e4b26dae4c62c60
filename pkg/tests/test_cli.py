import csv
import io
import json
import logging
import math

import pytest

from ratebound.cli.commands import simulate
from ratebound.cli.deps import parse_n_grid, parse_trials
from ratebound.cli.main import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from ratebound.core.errors import UsageError


@pytest.fixture(autouse=True)
def restore_root_logger():
    # main() installs its own handlers on the root logger
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, value = line[2:].split(": ", 1)
            meta[key] = json.loads(value)
        else:
            body.append(line)
    return meta, list(csv.DictReader(io.StringIO("\n".join(body))))


def test_parse_n_grid():
    assert parse_n_grid("100") == [100]
    assert parse_n_grid("10, 100,1000") == [10, 100, 1000]
    assert parse_n_grid("1:5:5") == [1, 2, 3, 4, 5]
    assert parse_n_grid("10:1000:3log") == [10, 100, 1000]
    with pytest.raises(UsageError):
        parse_n_grid("ten")


def test_parse_trials():
    assert parse_trials("1e6") == 1_000_000
    assert parse_trials("250") == 250
    with pytest.raises(UsageError):
        parse_trials("1.5")


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "ratebound" in capsys.readouterr().out


def test_bounds_categorical_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "categorical", "--gamma", "1,1", "--n-grid", "100,400")
    assert code == EXIT_OK
    meta, rows = read_csv(out)
    assert meta["family"] == "categorical"
    assert meta["params"] == {"gamma": [1.0, 1.0]}
    assert meta["mi_method"] == "clarke-barron" and meta["asymptotic"] is True
    assert "trials" in meta and meta["trials"] is None
    assert [row["n"] for row in rows] == ["100", "400"]
    assert float(rows[0]["rd_lower_risk"]) == pytest.approx(0.046107, abs=1e-6)
    assert float(rows[1]["rd_lower_risk"]) == pytest.approx(float(rows[0]["rd_lower_risk"]) / 2)
    assert float(rows[0]["reference_lower"]) < float(rows[0]["reference_upper"])


def test_bounds_json_with_infinite_order(capsys):
    code, out, _ = run(
        capsys, "bounds", "--family", "categorical", "--gamma", "2,3,1.5", "--p", "inf", "--n", "50", "--format", "json"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["metadata"]["p"] == "inf"
    row = payload["rows"][0]
    assert row["n"] == 50
    assert row["reference_upper"] is None
    assert row["printed_bound"] > 0


def test_bounds_gaussian_columns(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "gaussian", "--d", "2", "--sigma2", "1", "--n", "100")
    assert code == EXIT_OK
    _, rows = read_csv(out)
    row = rows[0]
    assert float(row["rd_lower_risk"]) / float(row["printed_bound"]) == pytest.approx(0.5, rel=1e-12)
    assert float(row["mi"]) == pytest.approx(math.log(51.0), rel=1e-12)


def test_bounds_zero_error(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "zero-error", "--n", "10")
    assert code == EXIT_OK
    _, rows = read_csv(out)
    assert float(rows[0]["reference_upper"]) == pytest.approx(1 / 24)
    assert float(rows[0]["rd_lower_risk"]) < float(rows[0]["reference_upper"])


def test_bounds_output_file_matches_stdout(capsys, tmp_path):
    argv = ["bounds", "--family", "multinomial", "--d", "3", "--k", "2", "--gamma", "1,2,3", "--n-grid", "10:1000:3log"]
    _, out, _ = run(capsys, *argv)
    target = tmp_path / "curve.csv"
    code, _, _ = run(capsys, *argv, "--output", str(target))
    assert code == EXIT_OK
    assert target.read_bytes() == out.encode("utf-8")


def test_simulate_output_independent_of_workers(capsys):
    argv = ["simulate", "--family", "categorical", "--gamma", "1,1", "--n-grid", "10,100", "--trials", "2000", "--seed", "7"]
    _, one, _ = run(capsys, *argv, "--workers", "1")
    _, four, _ = run(capsys, *argv, "--workers", "4")
    assert one == four
    meta, rows = read_csv(one)
    assert meta["seed"] == 7 and meta["trials"] == 2000 and meta["chunks"] == 64
    assert "workers" not in meta
    assert list(rows[0]) == ["n", "simulated_mean", "simulated_stderr"]


def test_compare_passes(capsys):
    code, out, _ = run(
        capsys, "compare", "--family", "categorical", "--gamma", "1,1", "--n-grid", "10,100", "--trials", "5000"
    )
    assert code == EXIT_OK
    meta, rows = read_csv(out)
    assert meta["checked_column"] == "rd_lower_risk"
    assert all(float(row["simulated_mean"]) > float(row["rd_lower_risk"]) for row in rows)


def test_compare_gaussian_checks_printed_bound(capsys):
    code, out, _ = run(
        capsys,
        "compare", "--family", "gaussian", "--d", "2", "--sigma2", "1", "--n", "50",
        "--trials", "200", "--test-points", "200",
    )
    assert code == EXIT_OK
    meta, _ = read_csv(out)
    assert meta["checked_column"] == "printed_bound"
    assert meta["params"]["test_points"] == 200


def test_compare_inflated_bound_is_a_violation(capsys):
    code, out, err = run(
        capsys,
        "compare", "--family", "categorical", "--gamma", "1,1", "--n", "100", "--trials", "5000",
        "--inflate-bound", "10",
    )
    assert code == EXIT_VIOLATION
    assert "violation" in err
    meta, rows = read_csv(out)
    assert meta["inflate_bound"] == 10
    assert len(rows) == 1


def test_mi_exact_zero_error(capsys):
    code, out, _ = run(capsys, "mi", "--family", "zero-error", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["value"] == pytest.approx(5 / 6)
    assert payload["method"] == "exact"
    assert "stderr" not in payload


def test_mi_monte_carlo(capsys):
    code, out, _ = run(
        capsys, "mi", "--family", "zero-error", "--n", "5", "--method", "monte-carlo", "--trials", "20000",
        "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["method"] == "monte_carlo"
    assert abs(payload["value"] - (1 / 2 + 1 / 3 + 1 / 4 + 1 / 5 + 1 / 6)) <= 4 * payload["stderr"]
    assert payload["metadata"]["rejected"] == 0


def test_mi_gaussian_any_order(capsys):
    code, out, _ = run(
        capsys, "mi", "--family", "gaussian", "--d", "2", "--sigma2", "0.5", "--n", "100", "--p", "2",
        "--method", "clarke-barron", "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["value"] == pytest.approx(math.log(100.0))
    assert payload["metadata"]["asymptotic"] is True


def test_entropy_command(capsys, tmp_path, rng):
    path = tmp_path / "samples.csv"
    path.write_text("x\n" + "\n".join(f"{v:.17g}" for v in rng.random(5000)) + "\n")
    code, out, _ = run(capsys, "entropy", "--input", str(path), "--header", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["value"] == pytest.approx(0.0, abs=0.1)
    assert payload["metadata"]["samples"] == 5000
    assert payload["metadata"]["dim"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--family", "categorical", "--n", "10"],
        ["bounds", "--family", "categorical", "--gamma", "1,1", "--n", "10", "--p", "0.5"],
        ["bounds", "--family", "gaussian", "--d", "2", "--sigma2", "1", "--n", "10", "--p", "2"],
        ["bounds", "--family", "categorical", "--gamma", "1,1", "--n-grid", "100,10"],
        ["bounds", "--family", "categorical", "--gamma", "1,1", "--n", "0"],
        ["bounds", "--family", "multinomial", "--d", "3", "--k", "1", "--gamma", "1,1", "--n", "10"],
        ["bounds", "--family", "poisson", "--n", "10"],
        ["simulate", "--family", "categorical", "--gamma", "1,1", "--n", "10", "--trials", "50"],
        ["simulate", "--family", "categorical", "--gamma", "1,1", "--n", "10"],
        ["mi", "--family", "categorical", "--gamma", "1,1", "--n-grid", "10,100"],
        ["mi", "--family", "categorical", "--gamma", "1,1", "--n", "10", "--method", "exact"],
        ["mi", "--family", "zero-error", "--n", "10", "--method", "monte-carlo"],
        ["entropy", "--input", "/nonexistent/samples.csv"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err.startswith("error:") or "error:" in err
    assert out == ""


def test_simulate_with_tiny_concentrations(capsys):
    code, out, err = run(
        capsys, "simulate", "--family", "categorical", "--gamma", "0.001,0.001",
        "--n-grid", "10,100", "--trials", "2000",
    )
    assert code == EXIT_OK
    assert "Traceback" not in err
    _, rows = read_csv(out)
    assert all(math.isfinite(float(row["simulated_mean"])) for row in rows)


@pytest.mark.parametrize("exc", [ValueError("bad sample"), FloatingPointError("overflow in sampler")])
def test_stray_numeric_errors_exit_with_usage_code(capsys, monkeypatch, exc):
    def failing(args):
        raise exc

    monkeypatch.setattr(simulate, "run", failing)
    code, out, err = run(capsys, "simulate", "--family", "categorical", "--gamma", "1,1", "--n", "10", "--trials", "200")
    assert code == EXIT_USAGE
    assert err.startswith("error:")
    assert str(exc) in err
    assert out == ""
