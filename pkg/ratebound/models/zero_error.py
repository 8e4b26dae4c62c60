"""Noiseless threshold classifier on [0, 1].

θ ~ U[0, 1], x ~ U[0, 1] and y = +1 iff x ≥ θ. The thresholds consistent
with a training set form the interval (θ_l, θ_r]; its width alone carries
the information the sample holds about θ.
"""
import logging
import math
from typing import Iterable, NamedTuple

import numpy as np

from ratebound.core.errors import ContradictionError, DomainError
from ratebound.numerics import rate_distortion as rd
from ratebound.numerics.entropy import DEFAULT_CHUNKS, mc_mean
from ratebound.numerics.sampling import sample_uniform
from ratebound.numerics.specfun import EULER_GAMMA, LossOrder, Nats, digamma, harmonic
from ratebound.schemas.bounds import InterpolationSpec
from ratebound.schemas.montecarlo import MonteCarloEstimate
from ratebound.schemas.zero_error import ThetaInterval, ZeroErrorSample

logger = logging.getLogger(__name__)

MIN_TRIALS = 1000
# θ itself is the regression parameter: one point, two classes
SPEC = InterpolationSpec(d_star=1, d_I=1, M=2, coverage=1.0)


class EstimatorRisk(NamedTuple):
    e_abs: float
    l1: float


class SampleComplexity(NamedTuple):
    n_necessary: float
    n_sufficient: float
    n_necessary_inline: float
    n_sufficient_rederived: float


def label(x: float, theta: float) -> int:
    return 1 if x >= theta else -1


def interval(samples: Iterable[ZeroErrorSample]) -> ThetaInterval:
    theta_l, theta_r = 0.0, 1.0
    has_negative = False
    for sample in samples:
        if sample.y < 0:
            has_negative = True
            theta_l = max(theta_l, sample.x)
        else:
            theta_r = min(theta_r, sample.x)
    # θ must satisfy θ_l < θ ≤ θ_r once a negative label pins θ_l
    if theta_l > theta_r or (has_negative and theta_l == theta_r):
        raise ContradictionError(f"labels admit no threshold: theta_l={theta_l}, theta_r={theta_r}")
    return ThetaInterval(theta_l=theta_l, theta_r=theta_r)


def interval_bounds(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`interval` over the last axis, without the consistency check."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y)
    theta_l = np.max(np.where(y < 0, x, 0.0), axis=-1, initial=0.0)
    theta_r = np.min(np.where(y > 0, x, 1.0), axis=-1, initial=1.0)
    return theta_l, theta_r


def midpoint_estimator(samples: Iterable[ZeroErrorSample]) -> float:
    return interval(samples).midpoint


def mutual_information_exact(n: int) -> Nats:
    """I(Z^n; θ) = H_{n+1} − 1."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return harmonic(n + 1) - 1.0


def _draw_intervals(rng: np.random.Generator, size: int, n: int):
    theta = sample_uniform(rng, size)
    x = sample_uniform(rng, (size, n))
    y = np.where(x >= theta[:, None], 1, -1)
    theta_l, theta_r = interval_bounds(x, y)
    return theta, theta_l, theta_r


def mi_monte_carlo(
    n: int, trials: int, seed: int, chunks: int = DEFAULT_CHUNKS, workers: int | None = None
) -> MonteCarloEstimate:
    """E[−ln(θ_r − θ_l)]; zero-width draws are redrawn and counted."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if trials < MIN_TRIALS:
        raise DomainError(f"trials must be >= {MIN_TRIALS}")

    def sampler(rng: np.random.Generator, size: int):
        _, theta_l, theta_r = _draw_intervals(rng, size, n)
        width = theta_r - theta_l
        rejected = 0
        bad = width <= 0
        while bad.any():
            rejected += int(bad.sum())
            _, redo_l, redo_r = _draw_intervals(rng, int(bad.sum()), n)
            width[bad] = redo_r - redo_l
            bad = width <= 0
        return -np.log(width), rejected

    estimate = mc_mean(sampler, trials, seed, chunks=chunks, workers=workers)
    if estimate.rejected:
        logger.warning("resampled %d degenerate interval(s) at n=%d", estimate.rejected, n)
    return estimate


def rd_lower(D: float, p: LossOrder) -> Nats:
    """[−ln(2Γ(1+1/p)) − (1/p)ln(pe) − ln D]⁺, the uniform-prior bound with h(θ) = 0."""
    return rd.rd_lower_pointwise(0.0, SPEC, p, D)


def rd_lower_rederived(D: float, p: LossOrder) -> Nats:
    """Same bound with the maximum-entropy error taken at moment D^p/2; adds (1/p)ln 2."""
    if not D > 0:
        raise DomainError(f"distortion D must be positive, got {D}")
    if math.isinf(p):
        return rd_lower(D, p)
    return max(0.0, -rd.generalized_gaussian_entropy(p, D**p / 2.0))


def risk_lower(n: int) -> float:
    """Lower bound on E|θ − θ̂| from rd_lower at p = 1 and the exact MI."""
    return 0.5 * rd.risk_lower_from_mi(mutual_information_exact(n), 0.0, SPEC, 1, 1.0)


def estimator_risk_exact(n: int) -> EstimatorRisk:
    """Midpoint risk 1/(4(n+1)) as published, from a quarter of E[θ_r − θ_l] = 1/(n+1).

    This is not what :func:`simulate_estimator_risk` converges to: the simulated
    E|θ − θ̂| targets 1/(2(n+2)) from :func:`estimator_risk_rederived`.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    return EstimatorRisk(e_abs=1.0 / (4 * (n + 1)), l1=1.0 / (2 * (n + 1)))


def estimator_risk_rederived(n: int) -> EstimatorRisk:
    """Midpoint risk 1/(2(n+2)).

    The spacing that contains θ is length-biased, so E[θ_r − θ_l] is
    2/(n+2) rather than 1/(n+1).
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    return EstimatorRisk(e_abs=1.0 / (2 * (n + 2)), l1=1.0 / (n + 2))


def simulate_estimator_risk(
    n: int, trials: int, seed: int, chunks: int = DEFAULT_CHUNKS, workers: int | None = None
) -> MonteCarloEstimate:
    """E|θ − θ̂| for the midpoint rule."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if trials < MIN_TRIALS:
        raise DomainError(f"trials must be >= {MIN_TRIALS}")

    def sampler(rng: np.random.Generator, size: int) -> np.ndarray:
        theta, theta_l, theta_r = _draw_intervals(rng, size, n)
        return np.abs(theta - 0.5 * (theta_l + theta_r))

    return mc_mean(sampler, trials, seed, chunks=chunks, workers=workers)


def _check_l1(l1: float) -> None:
    if not 0 < l1 < 0.5:
        raise DomainError(f"target L1 risk must lie in (0, 1/2), got {l1}")


def sample_complexity(l1: float) -> SampleComplexity:
    """Necessary and sufficient n for an L1 risk of ``l1``; reals, not rounded."""
    _check_l1(l1)
    result = SampleComplexity(
        n_necessary=math.exp(-EULER_GAMMA) / (2 * l1) - 1,
        n_sufficient=1.0 / (2 * l1) - 1,
        n_necessary_inline=math.exp(-EULER_GAMMA) / l1 - 1,
        n_sufficient_rederived=1.0 / l1 - 2,
    )
    logger.debug("zero-error l1=%g: %s", l1, result)
    return result


def sample_complexity_exact(l1: float) -> int:
    """Smallest integer n with H_{n+1} − 1 ≥ rd_lower(l1, 1)."""
    _check_l1(l1)
    target = rd_lower(l1, 1)

    def mi(n: int) -> float:
        # H_{n+1} = ψ(n+2) + γ
        return digamma(n + 2) + EULER_GAMMA - 1.0

    hi = 1
    while mi(hi) < target:
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if mi(mid) >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo
