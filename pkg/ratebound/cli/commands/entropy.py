import argparse

from ratebound.cli.deps import output_parent
from ratebound.cli.output import emit
from ratebound.core.config import settings
from ratebound.core.errors import UsageError
from ratebound.numerics.entropy import DEFAULT_K, knn_entropy_estimate, load_samples_csv
from ratebound.schemas.run import ScalarReport


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "entropy",
        parents=[output_parent()],
        help="k-NN differential entropy of samples in a CSV file",
    )
    parser.add_argument("--input", required=True, help="one sample per row, comma-separated")
    parser.add_argument("--header", action="store_true", help="skip the first row")
    parser.add_argument("--k", type=int, default=DEFAULT_K)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    try:
        samples = load_samples_csv(args.input, header=args.header)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror or exc}") from exc
    estimate = knn_entropy_estimate(samples, k=args.k)
    report = ScalarReport(
        metadata={
            "tool": settings.app_name,
            "version": settings.version,
            "command": "entropy",
            "samples": estimate.samples,
            "dim": int(samples.shape[1]),
            "k": estimate.k,
            "knn_metric": estimate.metric,
        },
        value=estimate.value,
        method=estimate.method,
        stderr=estimate.stderr,
    )
    emit(report, args.format, args.output)
    return 0
