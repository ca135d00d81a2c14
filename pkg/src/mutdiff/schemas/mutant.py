from typing import Optional
from pydantic import BaseModel, Field


class MutantRecord(BaseModel):
    """JSON listing entry for one generated mutant"""

    id: str
    operator_class: str
    location: str = Field(..., description="AST path of the mutated node, e.g. body[3].body[1].value.rhs")
    line: Optional[int] = None
    original: str
    mutated: str

    @classmethod
    def from_mutant(cls, mutant) -> "MutantRecord":
        return cls(
            id=mutant.id,
            operator_class=mutant.operator_class.value,
            location=mutant.location_text,
            line=mutant.line,
            original=mutant.original_text,
            mutated=mutant.mutated_text,
        )
