"""Binary classifier with multinomial class conditionals.

Class 2 draws k categorical variates from θ ~ Dir(γ); class 1 uses the
complementary weights 1 − θ, so the posterior at a count vector x is
1/(1 + Π R_i^{x_i}) with R_i = θ_i/(1 − θ_i). The points k·e_1..k·e_{d−1}
form a sufficient interpolation set.
"""
import logging
import math
from typing import Literal

import numpy as np
from scipy import special

from ratebound.core.errors import DomainError
from ratebound.models.categorical import MIN_TRIALS, posterior_entropy
from ratebound.numerics import rate_distortion as rd
from ratebound.numerics.entropy import DEFAULT_CHUNKS, mc_mean
from ratebound.numerics.sampling import LossEvaluator, sample_dirichlet, sample_multinomial
from ratebound.numerics.specfun import LossOrder, Nats, beta_entropy, digamma, log_beta_multivariate
from ratebound.schemas.bounds import FisherSummary
from ratebound.schemas.families import MultinomialFamily
from ratebound.schemas.montecarlo import MonteCarloEstimate

logger = logging.getLogger(__name__)

EntropyVariant = Literal["printed", "rederived"]


def posterior(x, theta, k: int) -> float:
    """p(y=1 | x, θ), evaluated as a logistic of Σ x_i·logit(θ_i)."""
    x = np.asarray(x)
    theta = np.asarray(theta, dtype=float)
    if x.shape != theta.shape or x.ndim != 1:
        raise DomainError("x and theta must be vectors of equal length")
    if np.any(x < 0) or int(x.sum()) != k:
        raise DomainError(f"counts must be non-negative and sum to k={k}")
    if np.any(theta <= 0) or np.any(theta >= 1):
        raise DomainError("theta entries must lie strictly inside (0, 1)")
    return float(special.expit(-np.dot(x, special.logit(theta))))


def interpolation_values(theta, k: int) -> np.ndarray:
    """W(k·e_i) = 1/(1 + R_i^k) for i < d; theta may be batched (..., d)."""
    theta = np.asarray(theta, dtype=float)
    return special.expit(-k * special.logit(theta[..., :-1]))


def sample_interpolation_values(family: MultinomialFamily, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` draws of W(S) under the prior, shape (size, d−1)."""
    return interpolation_values(sample_dirichlet(family.prior.as_array(), rng, size), family.k)


def beta_prime_entropy(a: float, b: float) -> Nats:
    """Entropy of R = θ/(1−θ) for θ ~ Beta(a, b)."""
    return (
        log_beta_multivariate([a, b])
        - (a - 1) * (digamma(a) - digamma(b))
        + (a + b) * (digamma(a + b) - digamma(b))
    )


def transformed_entropy_lower(
    h_r: Nats, k: int, e_log_r: float, e_log_r_pos: float, printed: bool = True
) -> Nats:
    """Lower bound on h(V) for V = 1/(1 + R^k).

    ``printed`` keeps the constants −(2/k)ln 2 − 2E[(ln R)⁺], which only bound
    ln(1 + R^k) for k = 1; the alternative uses −2 ln 2 − 2k·E[(ln R)⁺].
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if printed:
        tail = -(2.0 / k) * math.log(2.0) - 2.0 * e_log_r_pos
    else:
        tail = -2.0 * math.log(2.0) - 2.0 * k * e_log_r_pos
    return h_r + math.log(k) + tail + (k - 1) * e_log_r


def entropy_lower(family: MultinomialFamily) -> Nats:
    """Closed-form lower bound on h(W(S)) as published."""
    d, k = family.d, family.k
    g0 = family.prior.gamma0
    total = (d - 1) * (math.log(k) - (2.0 / k) * math.log(2.0))
    for g in family.prior.gamma[:-1]:
        total += (
            log_beta_multivariate([g, g0 - g])
            + (g0 + g + 2 - k) * digamma(g0 - g)
            - (g0 - 2) * digamma(g0)
            + (k - g) * digamma(g)
        )
    return total


def entropy_lower_rederived(family: MultinomialFamily) -> Nats:
    """Lower bound on h(W(S)) rebuilt from the scalar chain.

    Per coordinate, R_i ~ BetaPrime(γ_i, γ0−γ_i) and E[(ln R_i)⁺] ≤ ψ(γ0) − ψ(γ0−γ_i).
    For d ≥ 3 the coordinates of θ are dependent; the joint entropy is the
    sum of marginals minus Σh(θ_i) − h(θ_1..θ_{d−1}).
    """
    k = family.k
    g0 = family.prior.gamma0
    total = 0.0
    marginals = 0.0
    for a in family.prior.gamma[:-1]:
        b = g0 - a
        total += transformed_entropy_lower(
            beta_prime_entropy(a, b),
            k,
            e_log_r=digamma(a) - digamma(b),
            e_log_r_pos=digamma(g0) - digamma(b),
            printed=False,
        )
        marginals += beta_entropy(a, b)
    return total - (marginals - posterior_entropy(family.prior))


def _entropy(family: MultinomialFamily, entropy: EntropyVariant) -> Nats:
    if entropy == "printed":
        return entropy_lower(family)
    if entropy == "rederived":
        return entropy_lower_rederived(family)
    raise DomainError(f"unknown entropy variant {entropy!r}")


def fisher_summary(family: MultinomialFamily) -> FisherSummary:
    """Fisher information diag(k/(2θ_i(1−θ_i))) over θ_1..θ_{d−1}."""
    d, k = family.d, family.k
    g0 = family.prior.gamma0
    psi0 = digamma(g0)
    e_log = 0.5 * (d - 1) * math.log(k / 2.0) - 0.5 * math.fsum(
        digamma(g) + digamma(g0 - g) - 2.0 * psi0 for g in family.prior.gamma[:-1]
    )
    return FisherSummary(t=d - 1, e_log_sqrt_det_fisher=e_log, h_alpha=posterior_entropy(family.prior))


def mutual_information(n: int, family: MultinomialFamily) -> Nats:
    """Clarke-Barron approximation of I(Z^n; θ); asymptotic in n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return rd.mi_clarke_barron(n, fisher_summary(family))


def rd_bounds(
    D: float, p: LossOrder, family: MultinomialFamily, entropy: EntropyVariant = "printed"
) -> tuple[Nats, Nats]:
    """Worst-case-over-X rate-distortion bounds."""
    lower, upper = rd.rd_band(_entropy(family, entropy), family.spec, p, D)
    return lower.value, upper.value


def xbayes_risk_lower(
    n: int, family: MultinomialFamily, p: LossOrder, entropy: EntropyVariant = "printed"
) -> float:
    mi = mutual_information(n, family)
    return rd.risk_lower_from_mi(mi, _entropy(family, entropy), family.spec, p, 1.0)


def printed_xbayes_risk_lower(n: int, family: MultinomialFamily) -> float:
    """Best-effort reading of the published L_1 closed form.

    The bracket is unbalanced as printed; it is closed after the final sum
    and B(γ) is read as ln B(γ). Reported for reference only.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    d, k = family.d, family.k
    gamma = family.prior.gamma
    g0 = family.prior.gamma0
    gd = gamma[-1]
    exponent = (
        -log_beta_multivariate(gamma) / (d - 1)
        + (1 - g0 + (d - g0) / (d - 1)) * digamma(g0)
        + (gd - 1) / (d - 1) * digamma(gd)
        + math.fsum((k - 0.5) * digamma(g) + (g0 + g + 2 - k) * digamma(g0 - g) for g in gamma[:-1])
        / (d - 1)
    )
    value = k * 2.0 ** (-(2.0 + k) / k) * math.sqrt(2 * math.pi * math.e / n) * math.exp(exponent)
    logger.debug("multinomial n=%d: printed %.6g, pipeline %.6g", n, value, xbayes_risk_lower(n, family, 1))
    return value


def simulate_interpolation_risk(
    n: int,
    family: MultinomialFamily,
    trials: int,
    seed: int,
    p: LossOrder = 1,
    chunks: int = DEFAULT_CHUNKS,
    workers: int | None = None,
) -> MonteCarloEstimate:
    """Plug-in risk at the interpolation set, maximised over its d−1 points.

    Labels are uniform. The plug-in θ̂ is the Dirichlet posterior mean from the
    class-2 counts; class-1 observations follow the unnormalised weights
    1 − θ and are not used by the estimator. Max over S under-estimates the
    supremum over X, so the result is one-sided evidence only.
    """
    if trials < MIN_TRIALS:
        raise DomainError(f"trials must be >= {MIN_TRIALS}")
    if n < 0:
        raise DomainError("n must be >= 0")
    gamma = family.prior.as_array()
    g0 = family.prior.gamma0
    k = family.k
    evaluator = LossEvaluator(p=p, M=2)

    def sampler(rng: np.random.Generator, size: int) -> np.ndarray:
        theta = sample_dirichlet(gamma, rng, size)
        class2 = rng.binomial(n, 0.5, size)
        counts = sample_multinomial(k * class2, theta, rng)
        theta_hat = (gamma + counts) / (g0 + k * class2)[:, None]
        w = interpolation_values(theta, k)
        w_hat = interpolation_values(theta_hat, k)
        per_point = evaluator.inner(np.stack([w, 1 - w], axis=-1), np.stack([w_hat, 1 - w_hat], axis=-1))
        return np.max(per_point, axis=-1)

    return evaluator.aggregate(mc_mean(sampler, trials, seed, chunks=chunks, workers=workers))
