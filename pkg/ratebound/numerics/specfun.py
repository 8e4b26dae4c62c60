"""Scalar special functions used by every bound formula.

All results are in nats. Loss orders are plain floats with ``math.inf``
standing for the L-infinity loss, so limit formulas are evaluated exactly
rather than through a large finite exponent.
"""
import math
from typing import Sequence, TypeAlias

import numpy as np
from scipy import special

from ratebound.core.errors import DomainError

Nats: TypeAlias = float
LossOrder: TypeAlias = float

EULER_GAMMA = float(np.euler_gamma)


def parse_loss_order(value: str | float) -> LossOrder:
    """Parse ``"1"``, ``"2.5"``, ``"inf"`` or ``"∞"`` into a loss order >= 1."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "∞"):
            return math.inf
        try:
            value = float(text)
        except ValueError as exc:
            raise DomainError(f"not a loss order: {value!r}") from exc
    p = float(value)
    if math.isnan(p) or p < 1:
        raise DomainError(f"loss order must be >= 1 or infinite, got {p}")
    return p


def _check_positive(x, name: str) -> None:
    arr = np.asarray(x, dtype=float)
    if arr.size == 0 or not np.all(arr > 0):
        raise DomainError(f"{name} requires positive arguments")


def log_gamma(x):
    """ln Γ(x) for x > 0."""
    _check_positive(x, "log_gamma")
    out = special.gammaln(x)
    return float(out) if np.ndim(out) == 0 else out


def digamma(x):
    """ψ(x) for x > 0."""
    _check_positive(x, "digamma")
    out = special.digamma(x)
    return float(out) if np.ndim(out) == 0 else out


def trigamma(x):
    _check_positive(x, "trigamma")
    out = special.polygamma(1, x)
    return float(out) if np.ndim(out) == 0 else out


def log_beta_multivariate(gamma: Sequence[float]) -> float:
    """Σ ln Γ(γ_i) − ln Γ(Σ γ_i)."""
    arr = np.asarray(gamma, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise DomainError("multivariate Beta needs a vector of length >= 2")
    _check_positive(arr, "log_beta_multivariate")
    return math.fsum(special.gammaln(arr)) - float(special.gammaln(math.fsum(arr)))


def beta_entropy(a: float, b: float) -> Nats:
    """Differential entropy of Beta(a, b)."""
    _check_positive([a, b], "beta_entropy")
    return (
        log_beta_multivariate([a, b])
        - (a - 1) * digamma(a)
        - (b - 1) * digamma(b)
        + (a + b - 2) * digamma(a + b)
    )


def harmonic(n: int) -> float:
    if n < 0:
        raise DomainError("harmonic numbers are defined for n >= 0")
    if n == 0:
        return 0.0
    # smallest terms first
    return math.fsum(1.0 / np.arange(n, 0, -1, dtype=float))


def cp_constant(p: LossOrder, M: int) -> Nats:
    """log(2Γ(1+1/p)) + (1/p)·log(pe/(M−1)); ln 2 at p = ∞."""
    if M < 2:
        raise DomainError("class count M must be >= 2")
    if math.isnan(p) or p < 1:
        raise DomainError(f"loss order must be >= 1 or infinite, got {p}")
    if math.isinf(p):
        return math.log(2.0)
    return math.log(2.0) + log_gamma(1.0 + 1.0 / p) + math.log(p * math.e / (M - 1)) / p
