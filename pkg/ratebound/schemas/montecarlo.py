from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class MonteCarloEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    stderr: float = Field(ge=0.0)
    trials: int = Field(ge=2)
    seed: int
    # draws discarded and redrawn by the sampler (degenerate events)
    rejected: int = 0

    def within(self, target: float, n_stderr: float = 3.0) -> bool:
        return abs(self.mean - target) <= n_stderr * self.stderr


class EntropyEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    stderr: float = Field(ge=0.0)
    samples: int = Field(ge=1)
    method: str = "knn"
    k: Optional[int] = None
    metric: Optional[str] = None
