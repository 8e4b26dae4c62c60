import numpy as np
import pytest

from ratebound.schemas.families import MultinomialFamily
from ratebound.schemas.priors import DirichletPrior


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def uniform_prior():
    return DirichletPrior(gamma=(1.0, 1.0))


@pytest.fixture
def binomial_family(uniform_prior):
    return MultinomialFamily(d=2, k=1, prior=uniform_prior)
