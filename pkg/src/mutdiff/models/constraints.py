from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from mutdiff.models.ast import Expression, VarType
from mutdiff.models.schemas.config import DomainConfig
from mutdiff.services.lang.semantics import Value, VariableEnvironment


@dataclass(frozen=True)
class Eq:
    """var = expr, or var = neutral value when the path condition is false."""

    var: str
    expr: Expression
    path: Optional[Expression] = None


@dataclass(frozen=True)
class PhiEq:
    var: str
    guard: Expression
    then_var: str
    else_var: str


@dataclass(frozen=True)
class InputTie:
    var: str
    var_m: str


@dataclass(frozen=True)
class OutputDiffers:
    """At least one (y, y_M) pair takes different values."""

    pairs: Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class Blocking:
    """Forbids one exact tuple of input values."""

    assignment: Tuple[Tuple[str, Value], ...]

    @classmethod
    def from_environment(cls, env: Mapping[str, Value]) -> "Blocking":
        return cls(tuple(sorted(env.items())))

    def as_dict(self) -> VariableEnvironment:
        return dict(self.assignment)


@dataclass(frozen=True)
class FlagValue:
    var: str
    value: bool


@dataclass(frozen=True)
class Assert:
    """A boolean expression over constraint variables that must evaluate to true."""

    expr: Expression


Constraint = Union[Eq, PhiEq, InputTie, OutputDiffers, Blocking, FlagValue, Assert]


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    """Immutable finite-domain constraint system. Integer variables range over the domain
    bounds, booleans over {false, true}."""

    variables: Dict[str, VarType]
    constraints: Tuple[Constraint, ...]
    domain: DomainConfig = field(default_factory=DomainConfig)
    input_vars: Tuple[str, ...] = ()
    output_vars: Tuple[str, ...] = ()
    output_pairs: Tuple[Tuple[str, str], ...] = ()
    flag_vars: Tuple[str, ...] = ()
    name: str = ""

    def with_constraints(self, constraints: Iterable[Constraint]) -> "ConstraintSystem":
        return replace(self, constraints=self.constraints + tuple(constraints))

    def with_constraint(self, constraint: Constraint) -> "ConstraintSystem":
        return self.with_constraints((constraint,))

    def bounds(self, var: str) -> Tuple[int, int]:
        if self.variables[var] == VarType.BOOL:
            return 0, 1
        return self.domain.int_min, self.domain.int_max

    @property
    def blocking(self) -> Tuple[Blocking, ...]:
        return tuple(c for c in self.constraints if isinstance(c, Blocking))


class SolveStatus(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Solution:
    assignment: Dict[str, Value]

    def project(self, names: Iterable[str]) -> VariableEnvironment:
        return {name: self.assignment[name] for name in names}

    def __getitem__(self, name: str) -> Value:
        return self.assignment[name]


@dataclass
class SolverStats:
    nodes: int = 0
    solutions: int = 0
    pruned_by_intervals: int = 0
    filtered_values: int = 0


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    solution: Optional[Solution] = None
    stats: SolverStats = field(default_factory=SolverStats)

    @property
    def is_sat(self) -> bool:
        return self.status == SolveStatus.SAT
