import argparse
import logging

from ratebound.cli.deps import SIMULATION_COLUMNS, build_config, curve, family_parent, output_parent, simulation_parent
from ratebound.cli.output import emit
from ratebound.schemas.run import RiskRow

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "simulate",
        parents=[output_parent(), family_parent(), simulation_parent()],
        help="Monte-Carlo risk of the family's plug-in learner",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config, adapter = build_config(args, "simulate")
    rows = []
    for n in config.n_grid:
        estimate = adapter.simulate(n)
        logger.info("n=%d: %.6g +- %.2g", n, estimate.mean, estimate.stderr)
        rows.append(RiskRow(n=n, simulated_mean=estimate.mean, simulated_stderr=estimate.stderr))
    emit(curve(config, adapter, SIMULATION_COLUMNS, rows), args.format, args.output)
    return 0
