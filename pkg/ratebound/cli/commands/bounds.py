import argparse

from ratebound.cli.deps import BOUND_COLUMNS, build_config, curve, family_parent, mi_flags, output_parent
from ratebound.cli.output import emit


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "bounds",
        parents=[output_parent(), family_parent()],
        help="evaluate the lower bounds on a grid of n",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config, adapter = build_config(args, "bounds")
    rows = [adapter.bounds(n) for n in config.n_grid]
    emit(curve(config, adapter, BOUND_COLUMNS, rows, **mi_flags(adapter)), args.format, args.output)
    return 0
