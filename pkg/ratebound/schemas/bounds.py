import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator


class InterpolationSpec(BaseModel):
    """Interpolation-set cardinality, interpolation dimension, class count and coverage."""

    model_config = ConfigDict(frozen=True)

    d_star: int = Field(ge=1)
    d_I: int = Field(ge=1)
    M: int = Field(ge=2)
    # probability mass of the interpolation map; unused by pointwise bounds
    coverage: float = Field(default=1.0, gt=0.0, le=1.0)

    @property
    def rate_dim(self) -> int:
        """d_star * (M - 1), the number of free regression values in the set."""
        return self.d_star * (self.M - 1)


class FisherSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: int = Field(ge=1)
    e_log_sqrt_det_fisher: float
    h_alpha: float

    @field_validator("e_log_sqrt_det_fisher", "h_alpha")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be finite")
        return value


class BoundValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float = Field(ge=0.0)
    kind: Literal["rd_lower", "rd_upper", "risk_lower", "mi"]
