import math

import numpy as np
import pytest

from ratebound.core.errors import DomainError
from ratebound.numerics.sampling import (
    LossEvaluator,
    loss,
    sample_dirichlet,
    sample_isotropic_gaussian,
    sample_multinomial,
)
from ratebound.numerics.specfun import digamma
from ratebound.schemas.montecarlo import MonteCarloEstimate


def _within(values, target, n_stderr=3.0):
    stderr = values.std(ddof=1) / math.sqrt(values.size)
    return abs(values.mean() - target) <= n_stderr * stderr


def test_dirichlet_uniform_mean(rng):
    theta = sample_dirichlet([1.0, 1.0], rng, 100_000)
    assert theta.shape == (100_000, 2)
    assert _within(theta[:, 0], 0.5)


def test_dirichlet_expected_log(rng):
    theta = sample_dirichlet([2.0, 2.0], rng, 100_000)
    assert _within(np.log(theta[:, 0]), digamma(2.0) - digamma(4.0))


def test_dirichlet_on_simplex(rng):
    theta = sample_dirichlet([0.5, 2.0, 3.0], rng, 1000)
    assert np.allclose(theta.sum(axis=1), 1.0, atol=1e-12)
    assert np.all(theta >= 0)
    assert sample_dirichlet([1.0, 1.0, 1.0], rng).shape == (3,)


def test_dirichlet_rejects_bad_gamma(rng):
    with pytest.raises(DomainError):
        sample_dirichlet([1.0, 0.0], rng)


def test_dirichlet_tiny_concentrations(rng):
    theta = sample_dirichlet([1e-3, 1e-3], rng, 20_000)
    assert np.all(np.isfinite(theta))
    assert np.allclose(theta.sum(axis=1), 1.0, atol=1e-12)
    assert _within(theta[:, 0], 0.5)
    # Beta(1e-3, 1e-3) puts almost all mass next to the vertices
    assert np.mean(theta.max(axis=1) > 0.99) > 0.95
    assert np.all(np.isfinite(sample_dirichlet([1e-3, 1e-3], rng)))


def test_dirichlet_overflowing_concentrations_fall_back_to_vertices(rng):
    theta = sample_dirichlet([1e-310, 1e-310, 2e-310], rng, 20_000)
    assert np.all(np.isfinite(theta))
    assert np.all(np.sort(theta, axis=1) == [0.0, 0.0, 1.0])
    assert _within(theta[:, 2], 0.5, n_stderr=4.0)


def test_multinomial_counts_from_tiny_concentrations(rng):
    theta = sample_dirichlet([1e-3, 1e-3], rng, 5000)
    counts = sample_multinomial(30, theta, rng)
    assert np.all(counts.sum(axis=1) == 30)


def test_multinomial_edge_cases(rng):
    assert np.array_equal(sample_multinomial(0, [0.3, 0.7], rng), [0, 0])
    assert np.array_equal(sample_multinomial(25, [1.0, 0.0], rng), [25, 0])


def test_multinomial_mean_counts(rng):
    theta = np.array([0.2, 0.5, 0.3])
    counts = sample_multinomial(40, np.broadcast_to(theta, (50_000, 3)), rng)
    assert np.all(counts.sum(axis=1) == 40)
    for j in range(3):
        assert _within(counts[:, j].astype(float), 40 * theta[j])


def test_multinomial_batched_totals(rng):
    theta = sample_dirichlet([1.0, 2.0, 3.0], rng, 6)
    totals = np.array([0, 1, 5, 10, 100, 7])
    counts = sample_multinomial(totals, theta, rng)
    assert np.array_equal(counts.sum(axis=1), totals)


def test_loss_values():
    assert loss(1, 2, [0.3, 0.7], [0.3, 0.7]) == 0.0
    assert loss(1, 2, [0.3, 0.7], [0.45, 0.55]) == pytest.approx(0.3)
    assert loss(2, 2, [0.3, 0.7], [0.45, 0.55]) == pytest.approx(2 * 0.15**2)
    assert loss(math.inf, 3, [0.2, 0.3, 0.5], [0.1, 0.6, 0.3]) == pytest.approx(0.3)


def test_loss_binary_identity(rng):
    w = rng.random(100)
    w_hat = rng.random(100)
    inner = loss(1, 2, np.stack([w, 1 - w], axis=-1), np.stack([w_hat, 1 - w_hat], axis=-1))
    assert inner == pytest.approx(2 * np.abs(w - w_hat))


def test_loss_rejects_length_mismatch():
    with pytest.raises(DomainError):
        loss(1, 3, [0.5, 0.5], [0.5, 0.5])
    with pytest.raises(DomainError):
        loss(1, 2, [0.5, 0.5], [0.2, 0.3, 0.5])


def test_loss_evaluator_aggregate():
    estimate = MonteCarloEstimate(mean=0.25, stderr=0.01, trials=100, seed=0)
    assert LossEvaluator(p=1, M=2).aggregate(estimate) == estimate
    assert LossEvaluator(p=math.inf, M=2).aggregate(estimate) == estimate
    rooted = LossEvaluator(p=2, M=2).aggregate(estimate)
    assert rooted.mean == pytest.approx(0.5)
    assert rooted.stderr == pytest.approx(0.01)


def test_isotropic_gaussian(rng):
    draws = sample_isotropic_gaussian(rng, 50_000, 3, 0.25, mean=np.array([1.0, 0.0, -1.0]))
    assert draws.shape == (50_000, 3)
    assert draws.var(axis=0) == pytest.approx([0.25] * 3, rel=0.03)
    assert draws.mean(axis=0) == pytest.approx([1.0, 0.0, -1.0], abs=0.02)
