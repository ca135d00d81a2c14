from typing import Dict, Set, Tuple

from mutdiff.constants import ARITHMETIC_OPERATORS, LOGICAL_OPERATORS, RELATIONAL_OPERATORS
from mutdiff.exceptions import (
    RedeclaredVariableException,
    TypeMismatchException,
    UndeclaredVariableException,
    UnsupportedConstructException,
    UseBeforeDefinitionException,
)
from mutdiff.models.ast import (
    Assign,
    Binary,
    BoolConst,
    Decl,
    Expression,
    If,
    IntConst,
    Program,
    Statement,
    Unary,
    VarDecl,
    VarRef,
    VarType,
    While,
    iter_statements,
)


def _where(node) -> str:
    return str(node.loc) if getattr(node, "loc", None) is not None else "?"


class ProgramChecker:
    """Type checker and definite-assignment analysis for the mini-language.

    Variables live in one program-wide namespace. A variable is readable only where every
    path from the program start has assigned it; outputs must be assigned on every path.
    """

    def __init__(self, inputs: Tuple[VarDecl, ...], outputs: Tuple[VarDecl, ...]):
        self.types: Dict[str, VarType] = {}
        self.outputs = {decl.name for decl in outputs}
        self.defined_outputs: Set[str] = set()
        for decl in inputs + outputs:
            if decl.name in self.types:
                raise RedeclaredVariableException(decl.name, "header")
            self.types[decl.name] = decl.var_type

    def check_body(self, body: Tuple[Statement, ...], assigned: Set[str]) -> Set[str]:
        for stmt in body:
            assigned = self.check_statement(stmt, assigned)
        return assigned

    def check_statement(self, stmt: Statement, assigned: Set[str]) -> Set[str]:
        if isinstance(stmt, Decl):
            init_type = self.infer(stmt.init, assigned)
            if stmt.name in self.types:
                is_output_definition = stmt.name in self.outputs and stmt.name not in self.defined_outputs
                if not is_output_definition:
                    raise RedeclaredVariableException(stmt.name, _where(stmt))
                if self.types[stmt.name] != stmt.var_type:
                    raise TypeMismatchException(_where(stmt), self.types[stmt.name].value, stmt.var_type.value)
                self.defined_outputs.add(stmt.name)
            if init_type != stmt.var_type:
                raise TypeMismatchException(_where(stmt.init), stmt.var_type.value, init_type.value)
            self.types[stmt.name] = stmt.var_type
            return assigned | {stmt.name}

        if isinstance(stmt, Assign):
            if stmt.target not in self.types:
                raise UndeclaredVariableException(stmt.target, _where(stmt))
            value_type = self.infer(stmt.value, assigned)
            if value_type != self.types[stmt.target]:
                raise TypeMismatchException(_where(stmt.value), self.types[stmt.target].value, value_type.value)
            return assigned | {stmt.target}

        if isinstance(stmt, If):
            self._expect(stmt.cond, VarType.BOOL, assigned)
            if not _assigns_anything(stmt.then_body + stmt.else_body):
                raise UnsupportedConstructException(
                    "conditional without assignments", *(_line_col(stmt))
                )
            after_then = self.check_body(stmt.then_body, set(assigned))
            after_else = self.check_body(stmt.else_body, set(assigned))
            return after_then & after_else

        if isinstance(stmt, While):
            self._expect(stmt.cond, VarType.BOOL, assigned)
            self.check_body(stmt.body, set(assigned))
            return assigned

        raise UnsupportedConstructException(type(stmt).__name__)

    def _expect(self, expr: Expression, expected: VarType, assigned: Set[str]) -> None:
        found = self.infer(expr, assigned)
        if found != expected:
            raise TypeMismatchException(_where(expr), expected.value, found.value)

    def infer(self, expr: Expression, assigned: Set[str]) -> VarType:
        if isinstance(expr, IntConst):
            return VarType.INT
        if isinstance(expr, BoolConst):
            return VarType.BOOL
        if isinstance(expr, VarRef):
            if expr.name not in self.types:
                raise UndeclaredVariableException(expr.name, _where(expr))
            if expr.name not in assigned:
                raise UseBeforeDefinitionException(expr.name, _where(expr))
            return self.types[expr.name]
        if isinstance(expr, Unary):
            if expr.op == "-":
                self._expect(expr.operand, VarType.INT, assigned)
                return VarType.INT
            if expr.op == "not":
                self._expect(expr.operand, VarType.BOOL, assigned)
                return VarType.BOOL
            raise TypeMismatchException(_where(expr), "unary operator", expr.op)
        if isinstance(expr, Binary):
            if expr.op in ARITHMETIC_OPERATORS:
                self._expect(expr.lhs, VarType.INT, assigned)
                self._expect(expr.rhs, VarType.INT, assigned)
                return VarType.INT
            if expr.op in ("==", "!="):
                lhs_type = self.infer(expr.lhs, assigned)
                self._expect(expr.rhs, lhs_type, assigned)
                return VarType.BOOL
            if expr.op in RELATIONAL_OPERATORS:
                self._expect(expr.lhs, VarType.INT, assigned)
                self._expect(expr.rhs, VarType.INT, assigned)
                return VarType.BOOL
            if expr.op in LOGICAL_OPERATORS:
                self._expect(expr.lhs, VarType.BOOL, assigned)
                self._expect(expr.rhs, VarType.BOOL, assigned)
                return VarType.BOOL
            raise TypeMismatchException(_where(expr), "binary operator", expr.op)
        raise UnsupportedConstructException(type(expr).__name__)


def _assigns_anything(body: Tuple[Statement, ...]) -> bool:
    return any(isinstance(stmt, (Assign, Decl)) for stmt in iter_statements(body))


def _line_col(stmt) -> Tuple[int, int]:
    return (stmt.loc.line, stmt.loc.col) if stmt.loc else (0, 0)


def check_program(
    name: str, inputs: Tuple[VarDecl, ...], outputs: Tuple[VarDecl, ...], body: Tuple[Statement, ...]
) -> Program:
    """Validate a program and return it as a checked Program."""
    checker = ProgramChecker(inputs, outputs)
    assigned = checker.check_body(body, {decl.name for decl in inputs})
    for decl in outputs:
        if decl.name not in assigned:
            raise UseBeforeDefinitionException(decl.name, "end of program (output not assigned on every path)")
    return Program(name, inputs, outputs, body)


def recheck(program: Program) -> Program:
    return check_program(program.name, program.inputs, program.outputs, program.body)
