from enum import Enum
from pydantic import BaseModel, ConfigDict, Field, model_validator

from mutdiff.core.config import settings


class BaseRunConfig(BaseModel):
    """Base configuration with common settings for all run configuration models"""

    model_config = ConfigDict(extra="forbid", frozen=True)


class DomainConfig(BaseRunConfig):
    """Finite value domain shared by the interpreter and the solver"""

    int_min: int = Field(default_factory=lambda: settings.DEFAULT_INT_MIN, description="Smallest integer value")
    int_max: int = Field(default_factory=lambda: settings.DEFAULT_INT_MAX, description="Largest integer value")
    solver_timeout: float = Field(
        default_factory=lambda: settings.SOLVER_TIMEOUT, gt=0, description="Wall-clock bound per mutant in seconds"
    )

    @model_validator(mode="after")
    def validate_bounds(self):
        if self.int_min >= self.int_max:
            raise ValueError(f"int_min ({self.int_min}) must be smaller than int_max ({self.int_max})")
        return self

    @property
    def width(self) -> int:
        return self.int_max - self.int_min + 1

    @property
    def neutral_int(self) -> int:
        """Value taken by an integer assignment whose path condition is false"""
        return min(max(0, self.int_min), self.int_max)

    def contains(self, value: int) -> bool:
        return self.int_min <= value <= self.int_max


class FlagStrategy(str, Enum):
    BLOCKING = "blocking"
    CONSTRAIN = "constrain"


class DetectorConfig(BaseRunConfig):
    """Parameters of the equivalent mutant detection loop"""

    nd_initial: int = Field(default_factory=lambda: settings.DEFAULT_ND, ge=1, description="Initial nesting depth")
    nd_max: int = Field(default_factory=lambda: settings.DEFAULT_ND_MAX, ge=1, description="Maximum nesting depth")
    domain: DomainConfig = Field(default_factory=DomainConfig)
    max_blocking_rounds: int = Field(
        default_factory=lambda: settings.MAX_BLOCKING_ROUNDS, ge=1, description="Bound on blocking clauses per nd"
    )
    max_steps: int = Field(
        default_factory=lambda: settings.MAX_STEPS, ge=1, description="Interpreter budget for witness validation"
    )
    flag_strategy: FlagStrategy = Field(default=FlagStrategy.BLOCKING)

    @model_validator(mode="after")
    def validate_depths(self):
        if self.nd_initial > self.nd_max:
            raise ValueError(f"nd_initial ({self.nd_initial}) must not exceed nd_max ({self.nd_max})")
        return self
