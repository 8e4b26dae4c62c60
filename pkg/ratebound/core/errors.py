"""Exception hierarchy shared by the numeric layer and the CLI."""


class RateboundError(Exception):
    """Base class for every error raised by ratebound."""


class DomainError(RateboundError, ValueError):
    """An argument lies outside the domain of the operation."""


class ContradictionError(DomainError):
    """Labels are not consistent with any threshold."""


class UsageError(RateboundError):
    """Bad command-line flags or missing family parameters."""


class ComparisonViolation(RateboundError):
    """Simulated risk fell below a lower bound by more than 3 stderr."""

    def __init__(self, rows: list[dict], message: str | None = None):
        self.rows = rows
        super().__init__(message or f"{len(rows)} bound violation(s)")
