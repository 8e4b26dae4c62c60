import argparse
import logging

from ratebound.cli.deps import (
    COMPARE_COLUMNS,
    build_config,
    curve,
    family_parent,
    mi_flags,
    output_parent,
    simulation_parent,
)
from ratebound.cli.output import emit
from ratebound.core.errors import ComparisonViolation

logger = logging.getLogger(__name__)

N_STDERR = 3.0


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "compare",
        parents=[output_parent(), family_parent(), simulation_parent()],
        help="check simulated risk against the lower bound",
    )
    parser.add_argument(
        "--inflate-bound", type=float, default=None, metavar="FACTOR", help="multiply the checked bound"
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config, adapter = build_config(args, "compare")
    rows, violations = [], []
    for n in config.n_grid:
        row = adapter.bounds(n)
        estimate = adapter.simulate(n)
        row.simulated_mean = estimate.mean
        row.simulated_stderr = estimate.stderr
        rows.append(row)

        bound = getattr(row, adapter.compare_column)
        if bound is None:
            continue
        bound *= config.inflate_bound
        if estimate.mean + N_STDERR * estimate.stderr < bound:
            violations.append({"n": n, "bound": bound, "simulated": estimate.mean, "stderr": estimate.stderr})

    extra = mi_flags(adapter)
    extra["checked_column"] = adapter.compare_column
    extra["inflate_bound"] = config.inflate_bound
    emit(curve(config, adapter, COMPARE_COLUMNS, rows, **extra), args.format, args.output)
    if violations:
        raise ComparisonViolation(violations)
    logger.info("%d row(s), no violations", len(rows))
    return 0
