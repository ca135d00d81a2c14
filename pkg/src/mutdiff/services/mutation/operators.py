from abc import ABC, abstractmethod
from dataclasses import replace
from typing import Dict, Iterator, List, Tuple

from mutdiff.constants import ARITHMETIC_OPERATORS, LOGICAL_OPERATORS, RELATIONAL_OPERATORS
from mutdiff.models.ast import Binary, BoolConst, Expression, IntConst, Program, Unary, VarRef
from mutdiff.models.mutant import MutationOperatorClass


class MutationOperator(ABC):
    """Proposes replacements for one expression node. Candidates may be ill-typed; the engine
    re-checks every mutated program and drops those."""

    operator_class: MutationOperatorClass

    @abstractmethod
    def candidates(self, expr: Expression, program: Program) -> Iterator[Expression]:
        pass


class _OperatorReplacement(MutationOperator):
    table: Tuple[str, ...] = ()

    def candidates(self, expr: Expression, program: Program) -> Iterator[Expression]:
        if isinstance(expr, Binary) and expr.op in self.table:
            for op in self.table:
                if op != expr.op:
                    yield replace(expr, op=op)


class ArithmeticOperatorReplacement(_OperatorReplacement):
    operator_class = MutationOperatorClass.AOR
    table = ARITHMETIC_OPERATORS


class RelationalOperatorReplacement(_OperatorReplacement):
    operator_class = MutationOperatorClass.ROR
    table = RELATIONAL_OPERATORS


class ConditionalOperatorReplacement(_OperatorReplacement):
    operator_class = MutationOperatorClass.COR
    table = LOGICAL_OPERATORS


class UnaryOperatorInsertion(MutationOperator):
    operator_class = MutationOperatorClass.UOI

    def candidates(self, expr: Expression, program: Program) -> Iterator[Expression]:
        # literals are covered by constant replacement (-c)
        if isinstance(expr, IntConst):
            return
        for op in ("-", "not"):
            if isinstance(expr, Unary) and expr.op == op:
                continue
            yield Unary(op, expr, expr.loc)


class UnaryOperatorDeletion(MutationOperator):
    operator_class = MutationOperatorClass.UOD

    def candidates(self, expr: Expression, program: Program) -> Iterator[Expression]:
        if isinstance(expr, Unary):
            yield expr.operand


class ConstantReplacement(MutationOperator):
    operator_class = MutationOperatorClass.CRP

    def candidates(self, expr: Expression, program: Program) -> Iterator[Expression]:
        if isinstance(expr, BoolConst):
            yield replace(expr, value=not expr.value)
        elif isinstance(expr, IntConst):
            c = expr.value
            seen: List[int] = [c]
            for value in (c + 1, c - 1, 0, 1, -c):
                if value not in seen:
                    seen.append(value)
                    yield replace(expr, value=value)


class VariableReplacement(MutationOperator):
    operator_class = MutationOperatorClass.VRP

    def candidates(self, expr: Expression, program: Program) -> Iterator[Expression]:
        if isinstance(expr, VarRef):
            var_type = program.variable_types.get(expr.name)
            for name, other_type in program.variable_types.items():
                if name != expr.name and other_type == var_type:
                    yield replace(expr, name=name)


OPERATORS: Dict[MutationOperatorClass, MutationOperator] = {
    op.operator_class: op
    for op in (
        ArithmeticOperatorReplacement(),
        RelationalOperatorReplacement(),
        ConditionalOperatorReplacement(),
        UnaryOperatorInsertion(),
        UnaryOperatorDeletion(),
        ConstantReplacement(),
        VariableReplacement(),
    )
}
