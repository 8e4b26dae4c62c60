from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ZeroErrorSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float = Field(ge=0.0, le=1.0)
    y: Literal[-1, 1]


class ThetaInterval(BaseModel):
    """Set of thresholds consistent with a labeled sample: (theta_l, theta_r]."""

    model_config = ConfigDict(frozen=True)

    theta_l: float = Field(ge=0.0, le=1.0)
    theta_r: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _ordered(self) -> "ThetaInterval":
        if self.theta_l > self.theta_r:
            raise ValueError("theta_l must not exceed theta_r")
        return self

    @property
    def width(self) -> float:
        return self.theta_r - self.theta_l

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.theta_r + self.theta_l)
