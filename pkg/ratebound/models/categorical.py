"""Categorical distribution under a Dirichlet prior.

X is a singleton, so the regression function is θ itself and the unique
interpolation set is {0}.
"""
import logging
import math

import numpy as np

from ratebound.core.errors import DomainError
from ratebound.numerics import rate_distortion as rd
from ratebound.numerics.entropy import DEFAULT_CHUNKS, mc_mean
from ratebound.numerics.sampling import LossEvaluator, sample_dirichlet, sample_multinomial
from ratebound.numerics.specfun import LossOrder, Nats, digamma, log_beta_multivariate
from ratebound.schemas.bounds import FisherSummary
from ratebound.schemas.families import CategoricalFamily
from ratebound.schemas.montecarlo import MonteCarloEstimate
from ratebound.schemas.priors import DirichletPrior

logger = logging.getLogger(__name__)

MIN_TRIALS = 100


def _check_n(n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")


def posterior_entropy(prior: DirichletPrior) -> Nats:
    """Entropy of Dir(γ) over its first M−1 coordinates."""
    gamma = prior.as_array()
    return (
        log_beta_multivariate(gamma)
        - (prior.M - prior.gamma0) * digamma(prior.gamma0)
        - math.fsum((gamma - 1.0) * digamma(gamma))
    )


def fisher_summary(prior: DirichletPrior) -> FisherSummary:
    """Sufficient statistic θ_1..θ_{M−1} with Fisher information diag(1/θ_i)."""
    m1 = prior.M - 1
    e_log = 0.5 * m1 * digamma(prior.gamma0) - 0.5 * math.fsum(digamma(prior.as_array()[:-1]))
    return FisherSummary(t=m1, e_log_sqrt_det_fisher=e_log, h_alpha=posterior_entropy(prior))


def mutual_information(n: int, prior: DirichletPrior) -> Nats:
    """Clarke-Barron approximation of I(Z^n; θ); asymptotic in n."""
    _check_n(n)
    return rd.mi_clarke_barron(n, fisher_summary(prior))


def rd_bounds(D: float, p: LossOrder, prior: DirichletPrior) -> tuple[Nats, Nats]:
    lower, upper = rd.rd_band(posterior_entropy(prior), CategoricalFamily(prior=prior).spec, p, D)
    return lower.value, upper.value


def bayes_risk_lower(n: int, prior: DirichletPrior, p: LossOrder) -> float:
    """L_p Bayes-risk lower bound through the rate-distortion inversion."""
    mi = mutual_information(n, prior)
    return rd.risk_lower_from_mi(mi, posterior_entropy(prior), CategoricalFamily(prior=prior).spec, p, 1.0)


def printed_bayes_risk_lower(n: int, prior: DirichletPrior, p: LossOrder) -> float:
    """Closed forms as published for p in {1, 2, ∞}.

    The L_2 form lacks the ½ weights of the other two, so these values can
    disagree with :func:`bayes_risk_lower`.
    """
    _check_n(n)
    m1 = prior.M - 1
    psi_sum = math.fsum(digamma(prior.as_array()[:-1]))
    psi0 = digamma(prior.gamma0)
    if p == 1:
        value = m1 * math.sqrt(math.pi / (2 * math.e * n)) * math.exp(psi_sum / (2 * m1) - psi0)
    elif p == 2:
        value = math.sqrt(m1 / n) * math.exp(psi_sum / m1 - psi0)
    elif math.isinf(p):
        value = math.sqrt(math.pi * math.e / (2 * n)) * math.exp(psi_sum / (2 * m1) - psi0)
    else:
        raise DomainError("printed categorical bounds exist for p in {1, 2, inf} only")
    logger.debug(
        "categorical p=%s n=%d: printed %.6g, pipeline %.6g", p, n, value, bayes_risk_lower(n, prior, p)
    )
    return value


def minimax_limit_l1(n: int, M: int) -> float:
    _check_n(n)
    if M < 2:
        raise DomainError("M must be >= 2")
    return math.sqrt(math.pi * (M - 1) / (2 * math.e * n))


def minimax_gap(M: int) -> float:
    """Leading-constant gap between the published minimax rate and minimax_limit_l1."""
    if M < 2:
        raise DomainError("M must be >= 2")
    return math.sqrt(2 * (M - 1) / math.pi) - math.sqrt(math.pi * (M - 1) / (2 * math.e))


def kamath_bounds(n: int, M: int, kappa: float) -> tuple[float, float]:
    """Published L1 minimax bounds for symmetric priors γ_i = κ ≥ 1; lower may be negative."""
    _check_n(n)
    if M < 2:
        raise DomainError("M must be >= 2")
    if kappa < 1:
        raise DomainError(f"kamath bounds require kappa >= 1, got {kappa}")
    lead = math.sqrt(2 * (M - 1) / (math.pi * n))
    tail = 4 * math.sqrt(M) * (M - 1) ** 0.25 / n**0.75
    lower = lead * (1 - M / (2 * (M - 1) * kappa)) - tail - M * (1 - M * kappa) / (n + M * kappa)
    return lower, lead + tail


def simulate_bayes_risk(
    n: int,
    prior: DirichletPrior,
    p: LossOrder,
    trials: int,
    seed: int,
    chunks: int = DEFAULT_CHUNKS,
    workers: int | None = None,
) -> MonteCarloEstimate:
    """Risk of the posterior-mean estimator (γ + counts)/(γ0 + n)."""
    if trials < MIN_TRIALS:
        raise DomainError(f"trials must be >= {MIN_TRIALS}")
    if n < 0:
        raise DomainError("n must be >= 0")
    gamma = prior.as_array()
    evaluator = LossEvaluator(p=p, M=prior.M)

    def sampler(rng: np.random.Generator, size: int) -> np.ndarray:
        theta = sample_dirichlet(gamma, rng, size)
        counts = sample_multinomial(n, theta, rng)
        theta_hat = (gamma + counts) / (prior.gamma0 + n)
        return evaluator.inner(theta, theta_hat)

    return evaluator.aggregate(mc_mean(sampler, trials, seed, chunks=chunks, workers=workers))
