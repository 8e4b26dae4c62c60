from pydantic import BaseModel, ConfigDict, Field, model_validator

from ratebound.schemas.bounds import InterpolationSpec
from ratebound.schemas.priors import DirichletPrior


class CategoricalFamily(BaseModel):
    """Categorical distribution on M symbols under a Dirichlet prior; X is a singleton."""

    model_config = ConfigDict(frozen=True)

    prior: DirichletPrior

    @property
    def spec(self) -> InterpolationSpec:
        return InterpolationSpec(d_star=1, d_I=1, M=self.prior.M, coverage=1.0)


class MultinomialFamily(BaseModel):
    """Binary classifier with multinomial class conditionals over d categories and k trials."""

    model_config = ConfigDict(frozen=True)

    d: int = Field(ge=2)
    k: int = Field(ge=1)
    prior: DirichletPrior

    @model_validator(mode="after")
    def _prior_matches(self) -> "MultinomialFamily":
        if self.prior.M != self.d:
            raise ValueError(f"prior has {self.prior.M} components, expected d={self.d}")
        return self

    @property
    def spec(self) -> InterpolationSpec:
        # S = {k e_1, ..., k e_{d-1}}
        return InterpolationSpec(d_star=self.d - 1, d_I=self.d - 1, M=2, coverage=1.0)


class GaussianFamily(BaseModel):
    """Binary classifier with antipodal Gaussian class means and known noise variance."""

    model_config = ConfigDict(frozen=True)

    d: int = Field(ge=1)
    sigma2: float = Field(gt=0.0)

    @property
    def spec(self) -> InterpolationSpec:
        # any orthogonal basis is a sufficient interpolation set; the map covers all of X
        return InterpolationSpec(d_star=self.d, d_I=self.d, M=2, coverage=1.0)
