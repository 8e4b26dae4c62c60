"""Shared flags, value parsers and config builders for the sub-commands."""
import argparse
from typing import Any

import numpy as np
from pydantic import ValidationError

from ratebound.cli.families import FamilyAdapter, get_adapter
from ratebound.core.config import settings
from ratebound.core.errors import DomainError, UsageError
from ratebound.numerics.specfun import parse_loss_order
from ratebound.schemas.run import RiskCurve, RiskRow, RunConfig

BOUND_COLUMNS = ["n", "rd_lower_risk", "printed_bound", "mi", "reference_lower", "reference_upper"]
SIMULATION_COLUMNS = ["n", "simulated_mean", "simulated_stderr"]
COMPARE_COLUMNS = list(RiskRow.model_fields)


def parse_n_grid(text: str) -> list[int]:
    """``"100"``, ``"10,100,1000"`` or ``"start:stop:count"`` (``countlog`` for a geometric grid)."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            geometric = count.endswith("log")
            count = int(count[:-3] if geometric else count)
            space = np.geomspace if geometric else np.linspace
            values = np.rint(space(float(start), float(stop), count)).astype(int)
            return sorted(set(int(v) for v in values))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"bad n grid {text!r}") from exc


def parse_trials(text: str) -> int:
    """Integer trial counts, accepting scientific notation such as ``1e6``."""
    try:
        value = float(text)
    except ValueError as exc:
        raise UsageError(f"bad trial count {text!r}") from exc
    if not value.is_integer():
        raise UsageError(f"trial count must be an integer, got {text!r}")
    return int(value)


def parse_p(text: str) -> float:
    try:
        return parse_loss_order(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def output_parent() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", default=None, help="file path; stdout when omitted")
    return parser


def family_parent() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--family", required=True, choices=("categorical", "multinomial", "gaussian", "zero-error"))
    parser.add_argument("--gamma", help="comma-separated Dirichlet concentrations")
    parser.add_argument("--d", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--sigma2", type=float)
    parser.add_argument("--p", type=parse_p, default=1.0, help="loss order: 1, 2, ..., inf")
    grid = parser.add_mutually_exclusive_group(required=True)
    grid.add_argument("--n", dest="n_grid", type=lambda s: [int(s)])
    grid.add_argument("--n-grid", dest="n_grid", type=parse_n_grid)
    return parser


def simulation_parent() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=parse_trials)
    parser.add_argument("--chunks", type=int, default=64)
    parser.add_argument("--workers", type=int, default=None, help=f"default {settings.workers}")
    parser.add_argument("--test-points", type=int, default=1000)
    return parser


def build_config(args: argparse.Namespace, command: str) -> tuple[RunConfig, FamilyAdapter]:
    """Validate flags into a RunConfig and its family adapter."""
    fields: dict[str, Any] = {
        "command": command,
        "family": args.family,
        "d": args.d,
        "k": args.k,
        "sigma2": args.sigma2,
        "p": args.p,
        "n_grid": args.n_grid,
    }
    for name in ("seed", "trials", "chunks", "workers", "test_points", "inflate_bound", "method"):
        if getattr(args, name, None) is not None:
            fields[name] = getattr(args, name)
    try:
        if args.gamma is not None:
            fields["gamma"] = tuple(float(part) for part in args.gamma.split(",") if part.strip())
        config = RunConfig(**fields)
        return config, get_adapter(config)
    except (ValidationError, ValueError) as exc:
        raise UsageError(_first_error(exc)) from exc


def _first_error(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        error = exc.errors()[0]
        where = ".".join(str(part) for part in error["loc"])
        return f"{where}: {error['msg']}" if where else error["msg"]
    return str(exc)


def metadata(config: RunConfig, adapter: FamilyAdapter, **extra: Any) -> dict[str, Any]:
    """Run description written ahead of every artifact; never includes worker counts."""
    simulated = config.command in ("simulate", "compare")
    meta: dict[str, Any] = {
        "tool": settings.app_name,
        "version": settings.version,
        "command": config.command,
        "family": config.family,
        "params": adapter.params(),
        "p": config.p,
        "seed": config.seed if simulated else None,
        "trials": config.trials if simulated else None,
        "chunks": config.chunks if simulated else None,
    }
    meta.update(extra)
    meta.setdefault("bound_variants", adapter.bound_variants)
    meta.setdefault("notes", adapter.notes)
    return meta


def mi_flags(adapter: FamilyAdapter, method: str | None = None) -> dict[str, Any]:
    method = method or adapter.default_mi_method()
    return {"mi_method": method, "asymptotic": method == "clarke-barron"}


def curve(config: RunConfig, adapter: FamilyAdapter, columns: list[str], rows: list[RiskRow], **extra) -> RiskCurve:
    return RiskCurve(metadata=metadata(config, adapter, **extra), columns=columns, rows=rows)
