from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

from mutdiff.models.ast import Expression, VarType


@dataclass(frozen=True)
class Phi:
    """Phi(guard, then_value, else_value) selects then_value when guard holds, else_value otherwise."""

    guard: Expression
    then_value: str
    else_value: str


@dataclass(frozen=True)
class SsaAssignment:
    target: str
    base: str
    rhs: Union[Expression, Phi]
    # Condition under which the assignment executes; None means unconditionally
    path: Optional[Expression] = None
    # Set for assignments that came from a declaration, printed as "int x_1 = ..."
    declared_type: Optional[VarType] = None

    @property
    def is_phi(self) -> bool:
        return isinstance(self.rhs, Phi)


@dataclass(frozen=True, eq=False)
class SsaProgram:
    name: str
    assignments: Tuple[SsaAssignment, ...]
    # base variable -> version-0 SSA name, e.g. a -> a_0
    input_versions: Dict[str, str]
    # base variable -> last SSA name
    final_versions: Dict[str, str]
    # SSA name -> type, for every SSA name that occurs
    variable_types: Dict[str, VarType]
    outputs: Tuple[str, ...] = ()
    flags: Tuple[str, ...] = ()
    suffix: str = ""
    nd: Optional[int] = field(default=None)

    @property
    def output_versions(self) -> Tuple[str, ...]:
        return tuple(self.final_versions[name] for name in self.outputs)

    @property
    def flag_versions(self) -> Tuple[str, ...]:
        return tuple(self.final_versions[name] for name in self.flags)

    @property
    def targets(self) -> Tuple[str, ...]:
        return tuple(assignment.target for assignment in self.assignments)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SsaProgram):
            return NotImplemented
        return (
            self.assignments == other.assignments
            and self.input_versions == other.input_versions
            and self.final_versions == other.final_versions
            and self.outputs == other.outputs
            and self.flags == other.flags
        )
