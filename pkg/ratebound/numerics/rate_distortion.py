"""Generic rate-distortion bounds on the regression function.

The lower bounds take the differential entropy of the regression function
at an interpolation set (h_ws) and subtract the entropy of the best
generalized-Gaussian error with the permitted L_p distortion. Inverting a
lower bound against the mutual information the training set carries gives
a Bayes-risk lower bound; that inversion is the one pipeline every family
module goes through.
"""
import logging
import math

import numpy as np
from scipy import stats

from ratebound.core.errors import DomainError
from ratebound.numerics.specfun import LossOrder, Nats, cp_constant, log_gamma
from ratebound.schemas.bounds import BoundValue, FisherSummary, InterpolationSpec
from ratebound.schemas.montecarlo import EntropyEstimate

logger = logging.getLogger(__name__)

MIN_CHANGE_OF_VAR_SAMPLES = 1000


def _check_distortion(D: float) -> None:
    if not D > 0:
        raise DomainError(f"distortion D must be positive, got {D}")


def rd_lower_pointwise(h_ws: Nats, spec: InterpolationSpec, p: LossOrder, D: float) -> Nats:
    """[h_ws − d*(M−1)(ln D + C_p)]⁺, the worst-case-over-X' lower bound."""
    _check_distortion(D)
    return max(0.0, h_ws - spec.rate_dim * (math.log(D) + cp_constant(p, spec.M)))


def rd_upper(spec: InterpolationSpec, D: float) -> Nats:
    _check_distortion(D)
    return -spec.d_I * (spec.M - 1) * math.log(min(D, 1.0 / (spec.M - 1)))


def rd_upper_average(spec: InterpolationSpec, D: float) -> Nats:
    # the entropy cap of the pointwise argument holds for every set in the map
    return rd_upper(spec, D)


def rd_lower_average(e_h_ws: Nats, spec: InterpolationSpec, p: LossOrder, D: float) -> Nats:
    """Lower bound on R_p(D) for an isotropic interpolation map of given coverage."""
    _check_distortion(D)
    return max(
        0.0,
        e_h_ws - spec.rate_dim * (math.log(D / spec.coverage) + cp_constant(p, spec.M)),
    )


def rd_band(
    h_ws: Nats, spec: InterpolationSpec, p: LossOrder, D: float, average: bool = False
) -> tuple[BoundValue, BoundValue]:
    """Lower and upper rate bounds at distortion D; ``average`` uses the interpolation-map forms."""
    if average:
        lower, upper = rd_lower_average(h_ws, spec, p, D), rd_upper_average(spec, D)
    else:
        lower, upper = rd_lower_pointwise(h_ws, spec, p, D), rd_upper(spec, D)
    return BoundValue(value=lower, kind="rd_lower"), BoundValue(value=upper, kind="rd_upper")


def corollary_lower(h_ws: Nats, spec: InterpolationSpec, p: LossOrder, D: float) -> Nats:
    """Closed forms for p in {1, 2, ∞}, before the positive part."""
    _check_distortion(D)
    m1 = spec.M - 1
    if p == 1:
        penalty = math.log(2 * math.e * D / m1)
    elif p == 2:
        penalty = math.log(math.sqrt(2 * math.pi * math.e / m1) * D)
    elif math.isinf(p):
        penalty = math.log(2 * D)
    else:
        raise DomainError("corollary forms exist for p in {1, 2, inf} only")
    return h_ws - spec.d_star * m1 * penalty


def risk_lower_from_mi(
    mi: Nats,
    h_ws: Nats,
    spec: InterpolationSpec,
    p: LossOrder,
    coverage: float | None = None,
) -> float:
    """Smallest distortion D whose rate lower bound does not exceed ``mi``.

    D_min = coverage · exp((h_ws − mi)/(d*(M−1)) − C_p). The value is not
    clamped; it may exceed 1 when the entropy term dominates. An asymptotic
    ``mi`` may be negative for small n and is used as given.
    """
    coverage = spec.coverage if coverage is None else coverage
    if not 0 < coverage <= 1:
        raise DomainError("coverage must lie in (0, 1]")
    return coverage * math.exp((h_ws - mi) / spec.rate_dim - cp_constant(p, spec.M))


def mi_clarke_barron(n: int, fisher: FisherSummary) -> Nats:
    """Asymptotic I(Z^n; θ) = (t/2)ln(n/2πe) + E[ln|I(α)|^{1/2}] + h(α); o(1) dropped."""
    if n < 1:
        raise DomainError("mi_clarke_barron needs n >= 1")
    return 0.5 * fisher.t * math.log(n / (2 * math.pi * math.e)) + fisher.e_log_sqrt_det_fisher + fisher.h_alpha


def risk_lower_generic(
    n: int, t: int, c1: float, c2: float, spec: InterpolationSpec, p: LossOrder
) -> float:
    if n < 1:
        raise DomainError("risk_lower_generic needs n >= 1")
    k = spec.rate_dim
    c3p = math.exp(cp_constant(p, spec.M))
    return math.exp((c2 - c1) / k) / c3p * (2 * math.pi * math.e / n) ** (t / (2 * k))


def sample_complexity_generic(
    target_risk: float, t: int, c1: float, c2: float, spec: InterpolationSpec, p: LossOrder
) -> float:
    """Smallest real n with risk_lower_generic(n) <= target_risk."""
    if not target_risk > 0:
        raise DomainError("target risk must be positive")
    k = spec.rate_dim
    c3p = math.exp(cp_constant(p, spec.M))
    base = math.exp((c2 - c1) / k) / (c3p * target_risk)
    return 2 * math.pi * math.e * base ** (2 * k / t)


def posterior_entropy_upper(spec: InterpolationSpec) -> Nats:
    return -spec.d_I * (spec.M - 1) * math.log(spec.M - 1)


def _as_interpolation_samples(w_samples) -> np.ndarray:
    w = np.asarray(w_samples, dtype=float)
    if w.ndim == 1:
        w = w[:, None, None]
    elif w.ndim == 2:
        w = w[:, :, None]
    if w.ndim != 3 or w.shape[0] == 0:
        raise DomainError("expected samples of shape (N, d_I, M-1)")
    return w


def interpolation_to_likelihood(w_samples) -> np.ndarray:
    """N_i = W_i (1 + S_i/(1+S_i)) with S_i the row sum of W_i and N_iM fixed to 1."""
    w = _as_interpolation_samples(w_samples)
    s = w.sum(axis=-1, keepdims=True)
    return w * (1.0 + s / (1.0 + s))


def posterior_entropy_change_of_var(w_samples, h_n: Nats) -> EntropyEstimate:
    """h(W(S)) = −E[ln|J|] + h(N) with the block-diagonal Jacobian of the N ↦ W map.

    ``w_samples`` has shape (N, d_I, M−1); a 1-d array is read as N scalar
    draws (d_I = 1, M = 2). ``h_n`` is the entropy of the matrix N, supplied
    in closed form or as a k-NN estimate.
    """
    w = _as_interpolation_samples(w_samples)
    count, _, m1 = w.shape
    if count < MIN_CHANGE_OF_VAR_SAMPLES:
        logger.warning("change-of-variable entropy from only %d samples", count)
    s = w.sum(axis=-1)
    log_jac = m1 * np.log((1 + 2 * s) / (1 + s)) + np.log1p(s / ((1 + s) * (1 + 2 * s)))
    terms = -log_jac.sum(axis=-1)
    stderr = float(terms.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
    return EntropyEstimate(value=float(terms.mean()) + h_n, stderr=stderr, samples=count, method="change_of_variable")


def generalized_gaussian_entropy(p: LossOrder, moment: float) -> Nats:
    """Entropy of the density ∝ exp(−λ|u|^p) whose p-th absolute moment is ``moment``."""
    if math.isinf(p):
        raise DomainError("use the uniform entropy for p = inf")
    if p < 1:
        raise DomainError("loss order must be >= 1")
    if not moment > 0:
        raise DomainError("moment must be positive")
    return math.log(2.0) + log_gamma(1.0 + 1.0 / p) + math.log(p * math.e * moment) / p


def generalized_gaussian_sample(
    p: LossOrder, lam: float, rng: np.random.Generator, size: int | None = None
):
    """Draws from λ^{1/p}/(2Γ(1+1/p))·exp(−λ|u|^p); E|U|^p = 1/(pλ)."""
    if math.isinf(p) or p < 1:
        raise DomainError("generalized Gaussian sampling needs a finite p >= 1")
    if not lam > 0:
        raise DomainError("lambda must be positive")
    out = stats.gennorm.rvs(p, scale=lam ** (-1.0 / p), size=size, random_state=rng)
    return float(out) if size is None else out
