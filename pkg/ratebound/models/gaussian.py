"""Binary classifier with antipodal Gaussian class means.

θ ~ N(0, I/d); class y ∈ {1, 2} draws x ~ N(s·θ, σ²I) with s = 3 − 2y. The
regression function is the logistic W(1|x, θ) = 1/(1 + exp(−2xᵀθ/σ²)).
"""
import logging
import math
from typing import NamedTuple

import numpy as np
from scipy import special

from ratebound.core.errors import DomainError
from ratebound.models.categorical import MIN_TRIALS
from ratebound.numerics import rate_distortion as rd
from ratebound.numerics.entropy import DEFAULT_CHUNKS, mc_mean
from ratebound.numerics.sampling import sample_isotropic_gaussian
from ratebound.numerics.specfun import Nats, digamma, log_gamma
from ratebound.schemas.families import GaussianFamily
from ratebound.schemas.montecarlo import MonteCarloEstimate

logger = logging.getLogger(__name__)

MIN_TEST_POINTS = 100
# training samples drawn per block in the simulator
_TRAIN_BLOCK = 1024


class EntropyLower(NamedTuple):
    total: Nats
    nu: Nats


class RiskLower(NamedTuple):
    printed: float
    pipeline: float


def _family(d: int, sigma2: float) -> GaussianFamily:
    if d < 1 or not sigma2 > 0:
        raise DomainError("need d >= 1 and sigma2 > 0")
    return GaussianFamily(d=d, sigma2=sigma2)


def posterior(x, theta, sigma2: float) -> float:
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if x.shape != theta.shape or x.ndim != 1:
        raise DomainError("x and theta must be vectors of equal length")
    if not sigma2 > 0:
        raise DomainError("sigma2 must be positive")
    return float(special.expit(2.0 / sigma2 * np.dot(x, theta)))


def _gamma_ratio(d: int) -> float:
    """Γ((d+1)/2) / Γ(d/2)."""
    return math.exp(log_gamma((d + 1) / 2) - log_gamma(d / 2))


def entropy_lower_nu(d: int, sigma2: float) -> EntropyLower:
    """Closed-form lower bound on the expected entropy of W over the interpolation map."""
    _family(d, sigma2)
    a = 1.0 / (d * sigma2) + 1.0
    total = (
        0.5 * d * digamma(d / 2)
        + 0.5 * d * math.log(16 * math.pi * a / (d * sigma2))
        - d * _gamma_ratio(d) * math.sqrt(4 * a / (math.pi * d * sigma2))
        - 1.5 * d
        - 2 * d * math.log(2.0)
    )
    return EntropyLower(total=total, nu=total / d)


def mean_interpolation_norm(d: int, sigma2: float) -> float:
    """E‖X‖ for X drawn from the class-averaged marginal N(0, (1/d + σ²)I)."""
    _family(d, sigma2)
    return math.sqrt(1.0 / d + sigma2) * math.sqrt(2.0) * _gamma_ratio(d)


def coordinate_entropy_lower(c: float, d: int, sigma2: float) -> Nats:
    """Lower bound on h(W(x)) for a single test point with ‖x‖ = c.

    xᵀθ is N(0, c²/d), and ln W'(z) ≥ −|z| − 2 ln 2; the bound is within
    2 ln 2 of the true entropy.
    """
    _family(d, sigma2)
    if not c > 0:
        raise DomainError("norm must be positive")
    ratio = c * c / (d * sigma2 * sigma2)
    return 0.5 * math.log(8 * math.pi * ratio) + 0.5 - 2 * math.log(2.0) - 2 * math.sqrt(2 * ratio / math.pi)


def folded_positive_mean(s: float) -> float:
    """E[max(Z, 0)] for Z ~ N(0, s²)."""
    if s < 0:
        raise DomainError("scale must be non-negative")
    return s / math.sqrt(2 * math.pi)


def sample_interpolation_values(
    d: int, sigma2: float, size: int, rng: np.random.Generator, norm: float | None = None
) -> np.ndarray:
    """W at the scaled standard basis {c·e_i}, shape (size, d); c defaults to the mean norm."""
    c = mean_interpolation_norm(d, sigma2) if norm is None else norm
    theta = sample_isotropic_gaussian(rng, size, d, 1.0 / d)
    return special.expit(2.0 / sigma2 * c * theta)


def mutual_information_exact(n: int, d: int, sigma2: float) -> Nats:
    if n < 0:
        raise DomainError("n must be >= 0")
    _family(d, sigma2)
    return 0.5 * d * math.log1p(n / (d * sigma2))


def mutual_information_cb(n: int, d: int, sigma2: float) -> Nats:
    """Clarke-Barron form (d/2)·ln(n/(dσ²)); asymptotic."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _family(d, sigma2)
    return 0.5 * d * math.log(n / (d * sigma2))


def rd_bounds_l1(D: float, d: int, sigma2: float) -> tuple[Nats, Nats]:
    lower, upper = rd.rd_band(entropy_lower_nu(d, sigma2).total, _family(d, sigma2).spec, 1, D, average=True)
    return lower.value, upper.value


def bayes_risk_lower_l1(n: int, d: int, sigma2: float) -> RiskLower:
    """Printed L_1 bound and the inversion of the rate-distortion bound at the exact MI.

    The inversion carries an extra factor ½ relative to the printed form.
    """
    family = _family(d, sigma2)
    nu = entropy_lower_nu(d, sigma2)
    mi = mutual_information_exact(n, d, sigma2)
    printed = math.sqrt(sigma2 * d / (sigma2 * d + n)) * math.exp(nu.nu - 1.0)
    pipeline = rd.risk_lower_from_mi(mi, nu.total, family.spec, 1, 1.0)
    logger.debug("gaussian n=%d: printed %.6g, pipeline %.6g", n, printed, pipeline)
    return RiskLower(printed=printed, pipeline=pipeline)


def simulate_bayes_risk(
    n: int,
    d: int,
    sigma2: float,
    trials: int,
    test_points: int,
    seed: int,
    chunks: int = DEFAULT_CHUNKS,
    workers: int | None = None,
) -> MonteCarloEstimate:
    """L_1 risk of the conjugate plug-in rule θ̂ = (ΣT_i/σ²)/(d + n/σ²).

    Each trial averages 2|W(X; θ) − W(X; θ̂)| over fresh test points drawn
    from the true marginal.
    """
    if trials < MIN_TRIALS:
        raise DomainError(f"trials must be >= {MIN_TRIALS}")
    if test_points < MIN_TEST_POINTS:
        raise DomainError(f"test_points must be >= {MIN_TEST_POINTS}")
    if n < 0:
        raise DomainError("n must be >= 0")
    _family(d, sigma2)
    sd = math.sqrt(sigma2)

    def draw(rng: np.random.Generator, theta: np.ndarray, count: int) -> tuple[np.ndarray, np.ndarray]:
        labels = rng.integers(1, 3, size=(theta.shape[0], count))
        signs = (3 - 2 * labels)[..., None]
        x = signs * theta[:, None, :] + sd * rng.standard_normal((theta.shape[0], count, d))
        return x, signs

    def sampler(rng: np.random.Generator, size: int) -> np.ndarray:
        theta = sample_isotropic_gaussian(rng, size, d, 1.0 / d)
        t_sum = np.zeros((size, d))
        for start in range(0, n, _TRAIN_BLOCK):
            x, signs = draw(rng, theta, min(_TRAIN_BLOCK, n - start))
            t_sum += np.sum(signs * x, axis=1)
        theta_hat = (t_sum / sigma2) / (d + n / sigma2)
        x_test, _ = draw(rng, theta, test_points)
        w = special.expit(2.0 / sigma2 * np.einsum("tkd,td->tk", x_test, theta))
        w_hat = special.expit(2.0 / sigma2 * np.einsum("tkd,td->tk", x_test, theta_hat))
        return np.mean(2.0 * np.abs(w - w_hat), axis=1)

    return mc_mean(sampler, trials, seed, chunks=chunks, workers=workers)
