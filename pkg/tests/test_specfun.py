import math

import pytest

from ratebound.core.errors import DomainError
from ratebound.numerics.specfun import (
    EULER_GAMMA,
    beta_entropy,
    cp_constant,
    digamma,
    harmonic,
    log_beta_multivariate,
    log_gamma,
    parse_loss_order,
    trigamma,
)


@pytest.mark.parametrize(
    "text, expected",
    [("1", 1.0), ("2.5", 2.5), ("inf", math.inf), ("Infinity", math.inf), ("∞", math.inf), (3, 3.0)],
)
def test_parse_loss_order(text, expected):
    assert parse_loss_order(text) == expected


@pytest.mark.parametrize("text", ["0.5", "abc", "nan", 0])
def test_parse_loss_order_rejects(text):
    with pytest.raises(DomainError):
        parse_loss_order(text)


def test_log_gamma_and_digamma_known_values():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-14)
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2 * math.log(2), rel=1e-14)
    assert trigamma(1.0) == pytest.approx(math.pi**2 / 6, rel=1e-14)


def test_scalar_functions_return_floats():
    assert isinstance(digamma(2.0), float)
    assert digamma([1.0, 2.0]).shape == (2,)


@pytest.mark.parametrize("fn", [log_gamma, digamma, trigamma])
def test_nonpositive_arguments_rejected(fn):
    with pytest.raises(DomainError):
        fn(0.0)
    with pytest.raises(DomainError):
        fn([1.0, -2.0])


def test_log_beta_multivariate():
    assert log_beta_multivariate([1, 1]) == pytest.approx(0.0, abs=1e-15)
    assert log_beta_multivariate([1, 1, 1]) == pytest.approx(-math.log(2), rel=1e-14)
    assert log_beta_multivariate([2, 3]) == pytest.approx(math.log(1 / 12), rel=1e-14)
    with pytest.raises(DomainError):
        log_beta_multivariate([1.0])


def test_beta_entropy():
    assert beta_entropy(1, 1) == pytest.approx(0.0, abs=1e-15)
    assert beta_entropy(2, 2) == pytest.approx(-math.log(6) + 5 / 3, rel=1e-13)


def test_harmonic():
    assert harmonic(0) == 0.0
    assert harmonic(1) == 1.0
    assert harmonic(4) == pytest.approx(25 / 12, rel=1e-15)
    assert harmonic(10**6) - math.log(10**6) == pytest.approx(EULER_GAMMA, abs=1e-6)
    with pytest.raises(DomainError):
        harmonic(-1)


@pytest.mark.parametrize("M", [2, 3, 7])
def test_cp_constant_closed_forms(M):
    assert cp_constant(1, M) == pytest.approx(math.log(2 * math.e / (M - 1)), rel=1e-13)
    assert cp_constant(2, M) == pytest.approx(0.5 * math.log(2 * math.pi * math.e / (M - 1)), rel=1e-13)
    assert cp_constant(math.inf, M) == math.log(2)


def test_cp_constant_rejects_bad_arguments():
    with pytest.raises(DomainError):
        cp_constant(1, 1)
    with pytest.raises(DomainError):
        cp_constant(0.5, 2)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 3.7, 100.0])
def test_digamma_recurrence(x):
    assert digamma(x + 1) - digamma(x) == pytest.approx(1.0 / x, rel=1e-12)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 3.7, 100.0])
def test_log_gamma_recurrence(x):
    assert log_gamma(x + 1) == pytest.approx(log_gamma(x) + math.log(x), rel=1e-12, abs=1e-13)


def test_log_gamma_of_five():
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)


@pytest.mark.parametrize("M", [2, 3, 7])
def test_cp_constant_approaches_sup_norm_limit(M):
    assert cp_constant(1e6, M) == pytest.approx(math.log(2.0), abs=1e-4)
    assert cp_constant(math.inf, M) == math.log(2.0)
