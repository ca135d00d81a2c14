from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from mutdiff.schemas.verdict import DetectionStats, Equivalent, NotEquivalent, Unknown, Verdict, Witness


class MutantReport(BaseModel):
    """Per-mutant record of a run"""

    mutant_id: str
    operator_class: str
    location: str
    line: Optional[int] = None
    original: str
    mutated: str
    verdict: str = Field(..., description="equivalent, not_equivalent or unknown")
    nd_reached: int
    witness: Optional[Witness] = None
    reason: Optional[str] = Field(None, description="Why the verdict is unknown")
    detail: Optional[str] = None
    error_type: Optional[str] = None
    killed: Optional[bool] = Field(None, description="Killed by the supplied suite; absent without a suite")
    wall_ms: Optional[float] = None
    stats: DetectionStats

    @classmethod
    def from_verdict(cls, mutant, verdict: Verdict, killed: Optional[bool] = None) -> "MutantReport":
        return cls(
            mutant_id=mutant.id,
            operator_class=mutant.operator_class.value,
            location=mutant.location_text,
            line=mutant.line,
            original=mutant.original_text,
            mutated=mutant.mutated_text,
            verdict=verdict.kind,
            nd_reached=verdict.nd_reached,
            witness=verdict.witness if isinstance(verdict, NotEquivalent) else None,
            reason=verdict.reason.value if isinstance(verdict, Unknown) else None,
            detail=verdict.detail if isinstance(verdict, Unknown) else None,
            error_type=verdict.error_type if isinstance(verdict, Unknown) else None,
            killed=killed,
            wall_ms=verdict.stats.wall_ms,
            stats=verdict.stats,
        )


class ContradictionKind(str, Enum):
    # The killing input needs no more iterations than the verdict covered
    ENCODER_BUG = "encoder_bug"
    # The killing input needs more iterations than nd_reached; the verdict makes no claim about it
    BEYOND_BOUND = "beyond_bound"


class Contradiction(BaseModel):
    """A suite test kills a mutant reported equivalent"""

    mutant_id: str
    kind: ContradictionKind
    test_index: int
    iterations: int
    nd_reached: int


class RunReport(BaseModel):
    """Summary row of one program plus its per-mutant records"""

    program: str
    path: str
    loc: int = Field(..., description="Non-blank, non-comment source lines")
    no_mut: int
    det_eqmut: int
    not_eq: int
    unknown: int
    equivalent_fraction: float = Field(..., description="det_eqmut / no_mut, 0 without mutants")
    killed: Optional[int] = None
    score: Optional[float] = Field(None, description="Mutation score of the supplied suite")
    score_vacuous: bool = False
    augmented_killed: int = 0
    augmented_score: float = Field(..., description="Score after adding every witness to the suite")
    augmented_score_vacuous: bool = False
    contradictions: List[Contradiction] = Field(default_factory=list)
    mutants: List[MutantReport] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_counts(self):
        if self.no_mut != self.det_eqmut + self.not_eq + self.unknown:
            raise ValueError(
                f"no_mut ({self.no_mut}) must equal det_eqmut + not_eq + unknown "
                f"({self.det_eqmut} + {self.not_eq} + {self.unknown})"
            )
        if len(self.mutants) != self.no_mut:
            raise ValueError(f"{len(self.mutants)} mutant records for {self.no_mut} mutants")
        return self


class FileError(BaseModel):
    path: str
    error_type: str
    message: str


class CheckReport(BaseModel):
    """Everything one `mutdiff check` invocation produced"""

    tool: str
    version: str
    config: Dict[str, Any] = Field(..., description="Effective configuration of the run")
    programs: List[RunReport] = Field(default_factory=list)
    errors: List[FileError] = Field(default_factory=list)


def count_verdicts(verdicts: List[Verdict]) -> Dict[str, int]:
    return {
        "det_eqmut": sum(isinstance(v, Equivalent) for v in verdicts),
        "not_eq": sum(isinstance(v, NotEquivalent) for v in verdicts),
        "unknown": sum(isinstance(v, Unknown) for v in verdicts),
    }
