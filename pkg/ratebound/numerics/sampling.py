"""Samplers and the L_p loss shared by the family simulators."""
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ratebound.core.errors import DomainError
from ratebound.numerics.specfun import LossOrder
from ratebound.schemas.montecarlo import MonteCarloEstimate


def sample_uniform(rng: np.random.Generator, size=None) -> np.ndarray:
    return rng.random(size)


def sample_isotropic_gaussian(
    rng: np.random.Generator, size: int, d: int, variance: float, mean=None
) -> np.ndarray:
    """``size`` draws of N(mean, variance·I_d), shape (size, d)."""
    draws = rng.standard_normal((size, d)) * math.sqrt(variance)
    if mean is not None:
        draws += mean
    return draws


def sample_dirichlet(gamma, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Dirichlet draws from normalised Gamma variates; shape (M,) or (size, M).

    The Gamma variates are formed in log space through G_a = G_{a+1}·U^{1/a},
    so concentrations far below one do not underflow to an all-zero row.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.ndim != 1 or np.any(gamma <= 0):
        raise DomainError("Dirichlet concentrations must be a positive vector")
    shape = gamma.shape if size is None else (size, gamma.size)
    with np.errstate(divide="ignore", over="ignore"):
        log_g = np.log(rng.standard_gamma(np.broadcast_to(gamma + 1.0, shape)))
        log_g = log_g + np.log1p(-rng.random(shape)) / gamma
    rows = log_g.reshape(-1, gamma.size)
    dead = np.all(np.isneginf(rows), axis=-1)
    if dead.any():
        # every coordinate overflowed: all mass on one vertex, chosen with probability gamma_i / gamma_0
        cut = np.cumsum(gamma) / gamma.sum()
        vertex = np.minimum(np.searchsorted(cut, rng.random(int(dead.sum())), side="right"), gamma.size - 1)
        rows[dead] = np.where(np.arange(gamma.size) == vertex[:, None], 0.0, -np.inf)
    theta = special.softmax(log_g, axis=-1)
    # last coordinate closes the simplex
    theta[..., -1] = 1.0 - theta[..., :-1].sum(axis=-1)
    return np.clip(theta, 0.0, 1.0)


def sample_multinomial(n, theta, rng: np.random.Generator) -> np.ndarray:
    """Counts summing to n via sequential binomial draws.

    theta may be batched (..., M); n is a scalar or broadcasts against the batch.
    """
    theta = np.asarray(theta, dtype=float)
    counts = np.zeros(theta.shape, dtype=np.int64)
    remaining = np.broadcast_to(np.asarray(n, dtype=np.int64), theta.shape[:-1]).copy()
    rest = np.ones(theta.shape[:-1])
    for j in range(theta.shape[-1] - 1):
        cond = np.divide(theta[..., j], rest, out=np.zeros_like(rest), where=rest > 0)
        counts[..., j] = rng.binomial(remaining, np.clip(cond, 0.0, 1.0))
        remaining = remaining - counts[..., j]
        rest = rest - theta[..., j]
    counts[..., -1] = remaining
    return counts


def loss(p: LossOrder, M: int, w_true, w_hat) -> np.ndarray | float:
    """Inner L_p sum Σ_y |W − Ŵ|^p over the last axis (max gap when p = ∞).

    The 1/p power is not applied here; see :meth:`LossEvaluator.aggregate`.
    """
    w_true = np.asarray(w_true, dtype=float)
    w_hat = np.asarray(w_hat, dtype=float)
    if w_true.shape != w_hat.shape or w_true.shape[-1] != M:
        raise DomainError(f"expected matching vectors of length M={M}")
    gap = np.abs(w_true - w_hat)
    out = gap.max(axis=-1) if math.isinf(p) else np.sum(gap**p, axis=-1)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class LossEvaluator:
    p: LossOrder
    M: int

    def inner(self, w_true, w_hat):
        return loss(self.p, self.M, w_true, w_hat)

    def aggregate(self, estimate: MonteCarloEstimate) -> MonteCarloEstimate:
        """(E[inner])^{1/p} with a delta-method stderr."""
        if math.isinf(self.p) or self.p == 1:
            return estimate
        mean = max(estimate.mean, 0.0)
        value = mean ** (1.0 / self.p)
        stderr = value / (self.p * mean) * estimate.stderr if mean > 0 else 0.0
        return estimate.model_copy(update={"mean": value, "stderr": stderr})
