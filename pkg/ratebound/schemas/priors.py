import math
from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator


class DirichletPrior(BaseModel):
    """Dirichlet prior with positive concentration vector gamma."""

    model_config = ConfigDict(frozen=True)

    gamma: tuple[float, ...]

    @field_validator("gamma")
    @classmethod
    def _positive(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if len(value) < 2:
            raise ValueError("a Dirichlet prior needs at least two components")
        if not all(math.isfinite(g) and g > 0 for g in value):
            raise ValueError("concentrations must be finite and positive")
        return value

    @cached_property
    def gamma0(self) -> float:
        return math.fsum(self.gamma)

    @property
    def M(self) -> int:
        return len(self.gamma)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.gamma, dtype=float)

    @classmethod
    def symmetric(cls, kappa: float, M: int) -> "DirichletPrior":
        return cls(gamma=(float(kappa),) * M)

    @classmethod
    def parse(cls, text: str) -> "DirichletPrior":
        """Build a prior from a comma-separated list such as ``"1,1,2.5"``."""
        return cls(gamma=tuple(float(part) for part in text.split(",") if part.strip()))
