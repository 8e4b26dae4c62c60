import argparse
import logging
import sys

from ratebound import __version__
from ratebound.cli.router import include_commands
from ratebound.core.config import settings
from ratebound.core.errors import ComparisonViolation, DomainError, UsageError
from ratebound.core.logging import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


class RateboundParser(argparse.ArgumentParser):
    """Reports usage errors as UsageError so that they exit with code 1."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = RateboundParser(
        prog=settings.app_name,
        description="Rate-distortion lower bounds on Bayes risk, checked by simulation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=RateboundParser)
    include_commands(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    configure_logging(settings)
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComparisonViolation as exc:
        for row in exc.rows:
            logger.error(
                "violation at n=%d: simulated %.6g + 3*%.2g < bound %.6g",
                row["n"], row["simulated"], row["stderr"], row["bound"],
            )
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, ArithmeticError) as exc:
        logger.debug("unhandled numeric failure", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
