from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Optional, Tuple, Union


class VarType(str, Enum):
    INT = "int"
    BOOL = "bool"


@dataclass(frozen=True)
class SourceLocation:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


# Expressions. Source locations never take part in structural equality.


@dataclass(frozen=True)
class IntConst:
    value: int
    loc: Optional[SourceLocation] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class BoolConst:
    value: bool
    loc: Optional[SourceLocation] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class VarRef:
    name: str
    loc: Optional[SourceLocation] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Binary:
    op: str
    lhs: "Expression"
    rhs: "Expression"
    loc: Optional[SourceLocation] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expression"
    loc: Optional[SourceLocation] = field(default=None, compare=False, repr=False)


Expression = Union[IntConst, BoolConst, VarRef, Binary, Unary]


# Statements


@dataclass(frozen=True)
class Decl:
    name: str
    var_type: VarType
    init: Expression
    loc: Optional[SourceLocation] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Assign:
    target: str
    value: Expression
    loc: Optional[SourceLocation] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class If:
    cond: Expression
    then_body: Tuple["Statement", ...]
    else_body: Tuple["Statement", ...] = ()
    loc: Optional[SourceLocation] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class While:
    cond: Expression
    body: Tuple["Statement", ...]
    loc: Optional[SourceLocation] = field(default=None, compare=False, repr=False)

    @property
    def line(self) -> int:
        return self.loc.line if self.loc else 0


Statement = Union[Decl, Assign, If, While]


@dataclass(frozen=True)
class VarDecl:
    name: str
    var_type: VarType


@dataclass(frozen=True)
class Program:
    """A checked mini-language program: header declarations plus a statement body."""

    name: str
    inputs: Tuple[VarDecl, ...]
    outputs: Tuple[VarDecl, ...]
    body: Tuple[Statement, ...]

    @cached_property
    def variable_types(self) -> Dict[str, VarType]:
        types = {decl.name: decl.var_type for decl in self.inputs + self.outputs}
        for stmt in iter_statements(self.body):
            if isinstance(stmt, Decl):
                types[stmt.name] = stmt.var_type
        return types

    @property
    def input_names(self) -> Tuple[str, ...]:
        return tuple(decl.name for decl in self.inputs)

    @property
    def output_names(self) -> Tuple[str, ...]:
        return tuple(decl.name for decl in self.outputs)


@dataclass(frozen=True)
class LoopFreeProgram:
    """A program whose while loops were replaced by nested conditionals of depth nd."""

    program: Program
    loop_flags: Tuple[str, ...]
    nd: int

    @property
    def body(self) -> Tuple[Statement, ...]:
        return self.program.body


def iter_statements(body: Tuple[Statement, ...]):
    """Yield every statement of a body in pre-order, descending into nested blocks."""
    for stmt in body:
        yield stmt
        if isinstance(stmt, If):
            yield from iter_statements(stmt.then_body)
            yield from iter_statements(stmt.else_body)
        elif isinstance(stmt, While):
            yield from iter_statements(stmt.body)


def iter_subexpressions(expr: Expression):
    """Yield an expression and all of its subexpressions in pre-order."""
    yield expr
    if isinstance(expr, Binary):
        yield from iter_subexpressions(expr.lhs)
        yield from iter_subexpressions(expr.rhs)
    elif isinstance(expr, Unary):
        yield from iter_subexpressions(expr.operand)


def referenced_variables(expr: Expression) -> Tuple[str, ...]:
    seen = []
    for node in iter_subexpressions(expr):
        if isinstance(node, VarRef) and node.name not in seen:
            seen.append(node.name)
    return tuple(seen)
