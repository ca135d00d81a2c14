from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from mutdiff.models.ast import Expression, Program
from mutdiff.services.lang.ast_paths import AstPath, format_path
from mutdiff.services.lang.printer import format_expression


class MutationOperatorClass(str, Enum):
    """Method-level operator classes, in the order the engine applies them."""

    AOR = "AOR"  # arithmetic operator replacement
    ROR = "ROR"  # relational operator replacement
    COR = "COR"  # conditional (logical) operator replacement
    UOI = "UOI"  # unary operator insertion
    UOD = "UOD"  # unary operator deletion
    CRP = "CRP"  # constant replacement
    VRP = "VRP"  # variable replacement, off by default

    @classmethod
    def defaults(cls):
        return frozenset(op for op in cls if op != cls.VRP)

    @classmethod
    def parse_list(cls, text: str):
        """Parse a comma separated list such as 'AOR,ROR'."""
        names = [part.strip().upper() for part in text.split(",") if part.strip()]
        try:
            return frozenset(cls(name) for name in names)
        except ValueError:
            valid = ", ".join(op.value for op in cls)
            raise ValueError(f"unknown operator class in '{text}' (valid: {valid})") from None


@dataclass(frozen=True)
class MutationEdit:
    """A single-point change: a whole replacement expression, or just a new operator symbol."""

    operator_class: MutationOperatorClass
    replacement: Union[Expression, str]


@dataclass(frozen=True)
class Mutant:
    id: str
    base: Program
    location: AstPath
    operator_class: MutationOperatorClass
    original_fragment: Expression
    mutated_fragment: Expression
    program: Program

    @property
    def location_text(self) -> str:
        return format_path(self.location)

    @property
    def line(self) -> Optional[int]:
        loc = self.original_fragment.loc
        return loc.line if loc else None

    @property
    def original_text(self) -> str:
        return format_expression(self.original_fragment)

    @property
    def mutated_text(self) -> str:
        return format_expression(self.mutated_fragment)
