"""CSV and JSON writers for risk curves and scalar reports.

Output depends only on its inputs: no timestamps, LF line endings and
17 significant digits so that floats round-trip exactly.
"""
import csv
import json
import math
import sys
from contextlib import contextmanager
from typing import IO, Any, Iterator

from ratebound.core.errors import UsageError
from ratebound.schemas.run import RiskCurve, ScalarReport


def format_float(value: float | None) -> str:
    if value is None:
        return ""
    return f"{value:.17g}"


def jsonable(value: Any) -> Any:
    """Replace non-finite floats by strings so the result stays valid JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    if isinstance(value, dict):
        return {key: jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    return value


def _write_metadata(metadata: dict[str, Any], stream: IO[str]) -> None:
    for key, value in metadata.items():
        stream.write(f"# {key}: {json.dumps(jsonable(value), sort_keys=True)}\n")


def write_curve_csv(curve: RiskCurve, stream: IO[str]) -> None:
    _write_metadata(curve.metadata, stream)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(curve.columns)
    for row in curve.rows:
        values = row.model_dump()
        writer.writerow(
            str(values[column]) if column == "n" else format_float(values[column]) for column in curve.columns
        )


def write_curve_json(curve: RiskCurve, stream: IO[str]) -> None:
    payload = {
        "metadata": curve.metadata,
        "columns": curve.columns,
        "rows": [{column: row.model_dump()[column] for column in curve.columns} for row in curve.rows],
    }
    stream.write(json.dumps(jsonable(payload), indent=2) + "\n")


def write_scalar_csv(report: ScalarReport, stream: IO[str]) -> None:
    _write_metadata(report.metadata, stream)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["value", "method", "stderr"])
    writer.writerow([format_float(report.value), report.method, format_float(report.stderr)])


def write_scalar_json(report: ScalarReport, stream: IO[str]) -> None:
    payload = {"value": report.value, "method": report.method}
    if report.stderr is not None:
        payload["stderr"] = report.stderr
    payload["metadata"] = report.metadata
    stream.write(json.dumps(jsonable(payload), indent=2) + "\n")


@contextmanager
def open_output(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        handle = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc
    with handle:
        yield handle


def emit(report: RiskCurve | ScalarReport, fmt: str, path: str | None) -> None:
    with open_output(path) as stream:
        if isinstance(report, RiskCurve):
            (write_curve_json if fmt == "json" else write_curve_csv)(report, stream)
        else:
            (write_scalar_json if fmt == "json" else write_scalar_csv)(report, stream)
