from enum import Enum
from typing import Annotated, Dict, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from mutdiff.schemas.test_case import Scalar


class UnknownReason(str, Enum):
    TIMEOUT = "timeout"
    BLOCKING_ROUNDS_EXHAUSTED = "blocking_rounds_exhausted"
    ERROR = "error"


class DetectionStats(BaseModel):
    """Work done by one detect call"""

    solver_calls: int = Field(0, description="Number of solve requests, blocking re-solves included")
    blocking_rounds: int = Field(0, description="Blocking clauses added over all nesting depths")
    nd_reached: int = Field(..., description="Nesting depth of the last system solved")
    wall_ms: Optional[float] = Field(None, description="Wall-clock time in milliseconds")


class Witness(BaseModel):
    """Distinguishing test case with the outputs of both programs, confirmed by execution"""

    model_config = ConfigDict(frozen=True)

    input: Dict[str, Scalar]
    output_p: Dict[str, Scalar]
    output_m: Dict[str, Scalar]


class Equivalent(BaseModel):
    """No distinguishing input needing at most nd_reached loop iterations exists in the domain"""

    kind: Literal["equivalent"] = "equivalent"
    nd_reached: int
    stats: DetectionStats


class NotEquivalent(BaseModel):
    kind: Literal["not_equivalent"] = "not_equivalent"
    nd_reached: int
    witness: Witness
    stats: DetectionStats


class Unknown(BaseModel):
    kind: Literal["unknown"] = "unknown"
    reason: UnknownReason
    nd_reached: int
    detail: Optional[str] = None
    error_type: Optional[str] = Field(None, description="Exception class name when reason is error")
    stats: DetectionStats


Verdict = Annotated[Union[Equivalent, NotEquivalent, Unknown], Field(discriminator="kind")]
