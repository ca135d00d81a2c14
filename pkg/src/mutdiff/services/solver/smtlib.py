"""SMT-LIB2 export of constraint systems (QF_NIA over bounded Int and Bool constants).

Failure semantics carry over as side conditions: every nested arithmetic subterm must stay in
the integer domain and every divisor must be nonzero whenever evaluation reaches the subterm.
Truncating division and remainder are spelled out with ite and abs.
"""
import re
from typing import List, Optional

from mutdiff.models.ast import Binary, BoolConst, Expression, IntConst, Unary, VarRef, VarType
from mutdiff.models.constraints import (
    Assert,
    Blocking,
    Constraint,
    ConstraintSystem,
    Eq,
    FlagValue,
    InputTie,
    OutputDiffers,
    PhiEq,
)

_SIMPLE_SYMBOL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_RESERVED = frozenset(
    {"and", "or", "not", "ite", "div", "mod", "abs", "let", "forall", "exists", "true", "false", "distinct", "par"}
)
_SMT_OPERATORS = {"<": "<", "<=": "<=", ">": ">", ">=": ">=", "==": "=", "and": "and", "or": "or"}


def symbol(name: str) -> str:
    if _SIMPLE_SYMBOL.fullmatch(name) and name not in _RESERVED:
        return name
    return f"|{name}|"


def _int_literal(value: int) -> str:
    return str(value) if value >= 0 else f"(- {-value})"


def _literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return _int_literal(value)


def term(expr: Expression) -> str:
    if isinstance(expr, IntConst):
        return _int_literal(expr.value)
    if isinstance(expr, BoolConst):
        return "true" if expr.value else "false"
    if isinstance(expr, VarRef):
        return symbol(expr.name)
    if isinstance(expr, Unary):
        return f"(not {term(expr.operand)})" if expr.op == "not" else f"(- {term(expr.operand)})"
    if isinstance(expr, Binary):
        lhs, rhs = term(expr.lhs), term(expr.rhs)
        if expr.op == "!=":
            return f"(not (= {lhs} {rhs}))"
        if expr.op in _SMT_OPERATORS:
            return f"({_SMT_OPERATORS[expr.op]} {lhs} {rhs})"
        if expr.op in ("+", "-", "*"):
            return f"({expr.op} {lhs} {rhs})"
        quotient = f"(ite (= (>= {lhs} 0) (>= {rhs} 0)) (div (abs {lhs}) (abs {rhs})) (- (div (abs {lhs}) (abs {rhs}))))"
        if expr.op == "/":
            return quotient
        return f"(- {lhs} (* {rhs} {quotient}))"
    raise TypeError(f"not an expression: {expr!r}")


def _conj(context: Optional[str], condition: str) -> str:
    return condition if context is None else f"(and {context} {condition})"


class _SideConditions:
    def __init__(self, lo: int, hi: int):
        self.lo, self.hi = lo, hi
        self.items: List[str] = []

    def _require(self, context: Optional[str], condition: str) -> None:
        self.items.append(condition if context is None else f"(=> {context} {condition})")

    def collect(self, expr: Expression, context: Optional[str], top: bool = False) -> None:
        if isinstance(expr, IntConst):
            if not self.lo <= expr.value <= self.hi:
                self._require(context, "false")
            return
        if isinstance(expr, Unary):
            self.collect(expr.operand, context)
            if expr.op == "-" and not top:
                self._require(context, self._in_range(term(expr)))
            return
        if not isinstance(expr, Binary):
            return
        self.collect(expr.lhs, context)
        if expr.op == "and":
            self.collect(expr.rhs, _conj(context, term(expr.lhs)))
            return
        if expr.op == "or":
            self.collect(expr.rhs, _conj(context, f"(not {term(expr.lhs)})"))
            return
        self.collect(expr.rhs, context)
        if expr.op in ("/", "%"):
            self._require(context, f"(not (= {term(expr.rhs)} 0))")
        if expr.op in ("+", "-", "*", "/", "%") and not top:
            self._require(context, self._in_range(term(expr)))

    def _in_range(self, text: str) -> str:
        return f"(and (<= {_int_literal(self.lo)} {text}) (<= {text} {_int_literal(self.hi)}))"


def constraint_term(constraint: Constraint, cs: ConstraintSystem) -> str:
    if isinstance(constraint, Eq):
        var, value = symbol(constraint.var), term(constraint.expr)
        if constraint.path is None:
            return f"(= {var} {value})"
        neutral = _int_literal(cs.domain.neutral_int) if cs.variables[constraint.var] == VarType.INT else "false"
        return f"(= {var} (ite {term(constraint.path)} {value} {neutral}))"
    if isinstance(constraint, PhiEq):
        return (
            f"(= {symbol(constraint.var)} "
            f"(ite {term(constraint.guard)} {symbol(constraint.then_var)} {symbol(constraint.else_var)}))"
        )
    if isinstance(constraint, InputTie):
        return f"(= {symbol(constraint.var)} {symbol(constraint.var_m)})"
    if isinstance(constraint, OutputDiffers):
        differs = [f"(distinct {symbol(y)} {symbol(y_m)})" for y, y_m in constraint.pairs]
        return differs[0] if len(differs) == 1 else f"(or {' '.join(differs)})"
    if isinstance(constraint, Blocking):
        equalities = [f"(= {symbol(name)} {_literal(value)})" for name, value in constraint.assignment]
        if not equalities:
            return "false"
        return f"(not {equalities[0]})" if len(equalities) == 1 else f"(not (and {' '.join(equalities)}))"
    if isinstance(constraint, FlagValue):
        return f"(= {symbol(constraint.var)} {_literal(constraint.value)})"
    if isinstance(constraint, Assert):
        return term(constraint.expr)
    raise TypeError(f"not a constraint: {constraint!r}")


def _side_conditions(constraint: Constraint, sides: _SideConditions) -> None:
    if isinstance(constraint, Eq):
        if constraint.path is not None:
            sides.collect(constraint.path, None)
            sides.collect(constraint.expr, term(constraint.path), top=True)
        else:
            sides.collect(constraint.expr, None, top=True)
    elif isinstance(constraint, PhiEq):
        sides.collect(constraint.guard, None)
    elif isinstance(constraint, Assert):
        sides.collect(constraint.expr, None)


def export_smtlib(cs: ConstraintSystem) -> str:
    """Deterministic SMT-LIB2 script with the same satisfiability as cs."""
    lo, hi = cs.domain.int_min, cs.domain.int_max
    lines = [
        f"; constraint system {cs.name}" if cs.name else "; constraint system",
        "(set-logic QF_NIA)",
        "; variables",
    ]
    for name, var_type in cs.variables.items():
        sort = "Bool" if var_type == VarType.BOOL else "Int"
        lines.append(f"(declare-const {symbol(name)} {sort})")

    lines.append("; domains")
    for name, var_type in cs.variables.items():
        if var_type == VarType.INT:
            lines.append(f"(assert (and (<= {_int_literal(lo)} {symbol(name)}) (<= {symbol(name)} {_int_literal(hi)})))")

    lines.append("; constraints")
    sides = _SideConditions(lo, hi)
    for constraint in cs.constraints:
        lines.append(f"(assert {constraint_term(constraint, cs)})")
        _side_conditions(constraint, sides)

    if sides.items:
        lines.append("; well-definedness")
        lines += [f"(assert {item})" for item in dict.fromkeys(sides.items)]

    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
