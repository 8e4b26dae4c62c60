import math
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ratebound.schemas.families import CategoricalFamily, GaussianFamily, MultinomialFamily
from ratebound.schemas.priors import DirichletPrior

FamilyName = Literal["categorical", "multinomial", "gaussian", "zero-error"]
CommandName = Literal["bounds", "simulate", "compare", "mi"]
MiMethod = Literal["exact", "clarke-barron", "monte-carlo"]

MIN_SIMULATION_TRIALS = 100


class RunConfig(BaseModel):
    """Validated parameters of one CLI invocation."""

    model_config = ConfigDict(frozen=True)

    command: CommandName
    family: FamilyName
    gamma: Optional[tuple[float, ...]] = None
    d: Optional[int] = Field(default=None, ge=1)
    k: Optional[int] = Field(default=None, ge=1)
    sigma2: Optional[float] = Field(default=None, gt=0.0)
    p: float = 1.0
    n_grid: list[int]
    trials: Optional[int] = Field(default=None, ge=2)
    seed: int = 0
    chunks: int = Field(default=64, ge=1)
    workers: Optional[int] = Field(default=None, ge=1)
    test_points: int = Field(default=1000, ge=1)
    inflate_bound: float = Field(default=1.0, gt=0.0)
    method: Optional[MiMethod] = None

    @field_validator("n_grid")
    @classmethod
    def _increasing(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("n grid is empty")
        if value[0] < 1 or any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("n values must be strictly increasing positive integers")
        return value

    @field_validator("p")
    @classmethod
    def _loss_order(cls, value: float) -> float:
        if math.isnan(value) or value < 1:
            raise ValueError("loss order must be >= 1")
        return value

    @model_validator(mode="after")
    def _family_params(self) -> "RunConfig":
        if self.family == "categorical" and self.gamma is None:
            raise ValueError("categorical family needs --gamma")
        if self.family == "multinomial" and (self.gamma is None or self.d is None or self.k is None):
            raise ValueError("multinomial family needs --d, --k and --gamma")
        if self.family == "gaussian" and (self.d is None or self.sigma2 is None):
            raise ValueError("gaussian family needs --d and --sigma2")
        if self.family in ("gaussian", "zero-error") and self.p != 1 and self.command != "mi":
            raise ValueError(f"{self.family} risk columns exist for --p 1 only")
        if self.command in ("simulate", "compare"):
            if self.trials is None or self.trials < MIN_SIMULATION_TRIALS:
                raise ValueError(f"--trials must be >= {MIN_SIMULATION_TRIALS}")
        return self

    @property
    def prior(self) -> DirichletPrior:
        return DirichletPrior(gamma=self.gamma)

    def categorical(self) -> CategoricalFamily:
        return CategoricalFamily(prior=self.prior)

    def multinomial(self) -> MultinomialFamily:
        return MultinomialFamily(d=self.d, k=self.k, prior=self.prior)

    def gaussian(self) -> GaussianFamily:
        return GaussianFamily(d=self.d, sigma2=self.sigma2)


class RiskRow(BaseModel):
    n: int
    rd_lower_risk: Optional[float] = None
    printed_bound: Optional[float] = None
    simulated_mean: Optional[float] = None
    simulated_stderr: Optional[float] = None
    mi: Optional[float] = None
    reference_lower: Optional[float] = None
    reference_upper: Optional[float] = None


class RiskCurve(BaseModel):
    """One row per n; ``columns`` is fixed by the command that built it."""

    metadata: dict[str, Any]
    columns: list[str]
    rows: list[RiskRow]


class ScalarReport(BaseModel):
    metadata: dict[str, Any]
    value: float
    method: str
    stderr: Optional[float] = None
