import argparse

from ratebound.cli.deps import build_config, family_parent, metadata, mi_flags, output_parent, simulation_parent
from ratebound.cli.output import emit
from ratebound.core.errors import UsageError
from ratebound.schemas.montecarlo import MonteCarloEstimate
from ratebound.schemas.run import ScalarReport


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "mi",
        parents=[output_parent(), family_parent(), simulation_parent()],
        help="mutual information between the training set and the parameter",
    )
    parser.add_argument("--method", choices=("exact", "clarke-barron", "monte-carlo"))
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config, adapter = build_config(args, "mi")
    if len(config.n_grid) != 1:
        raise UsageError("mi takes a single --n")
    n = config.n_grid[0]
    method = config.method or adapter.default_mi_method()
    adapter.check_mi_method(method)
    if method == "monte-carlo" and config.trials is None:
        raise UsageError("--method monte-carlo needs --trials")

    result = adapter.mi(n, method)
    extra = mi_flags(adapter, method)
    extra["n"] = n
    if isinstance(result, MonteCarloEstimate):
        extra.update(seed=config.seed, trials=config.trials, chunks=config.chunks, rejected=result.rejected)
        value, stderr = result.mean, result.stderr
    else:
        value, stderr = result, None
    report = ScalarReport(
        metadata=metadata(config, adapter, **extra),
        value=value,
        method=method.replace("-", "_"),
        stderr=stderr,
    )
    emit(report, args.format, args.output)
    return 0
