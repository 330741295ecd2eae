"""
Run configuration schemas.
"""
from typing import Literal, Optional

from pydantic import Field, ValidationInfo, field_validator, model_validator

from app.schemas.base import BaseSchema


Command = Literal["count", "sample-dp", "sample-seq", "enumerate", "mcmc", "mixing-sweep", "verify"]


class RunSpec(BaseSchema):
    """Parsed command line of one run."""

    command: Command
    parameters: dict = Field(default_factory=dict, description="Parsed flags")
    seed: int = Field(0, ge=0, description="Base seed, always present")
    output_format: Literal["csv", "json"] = "csv"
    output: Optional[str] = Field(None, description="Output path, stdout if omitted")
    threads: int = Field(1, ge=1)


class ExperimentConfig(BaseSchema):
    """Configuration of a mixing-time experiment."""

    n: int = Field(..., ge=0, description="Width")
    area: int = Field(..., ge=0, description="Area")
    steps: int = Field(..., ge=0, description="Horizon t")
    runs: int = Field(..., ge=1, description="Independent chains")
    seed: int = Field(0, ge=0, description="Base seed")
    tv_every: int = Field(50, ge=1, description="Report spacing")
    tv_schedule: Optional[list[int]] = Field(None, description="Explicit report steps")

    @field_validator("area")
    @classmethod
    def validate_area(cls, v: int, info: ValidationInfo) -> int:
        """Validate area does not exceed ⌊n²/4⌋."""
        n = info.data.get("n")
        if n is not None and v > n * n // 4:
            raise ValueError(f"area {v} exceeds the maximum {n * n // 4} for width {n}")
        return v

    @model_validator(mode="after")
    def validate_schedule(self) -> "ExperimentConfig":
        """Validate explicit schedule lies within [0, steps]."""
        if self.tv_schedule is not None:
            if any(t < 0 or t > self.steps for t in self.tv_schedule):
                raise ValueError(f"schedule must lie within [0, {self.steps}]")
        return self

    @property
    def schedule(self) -> list[int]:
        """Sorted distinct report steps."""
        if self.tv_schedule is not None:
            return sorted(set(self.tv_schedule))
        return list(range(0, self.steps + 1, self.tv_every))
