"""Value semantics shared by the interpreter, the SSA evaluator and the constraint checker.

Integers are exact and confined to the configured domain: every integer produced by a
constant, an arithmetic operator or a negation is range-checked. Division truncates toward
zero and the remainder takes the sign of the dividend.
"""
from typing import Any, Dict, Union

from mutdiff.exceptions import DivisionByZeroException, DomainOverflowException, UseBeforeDefinitionException
from mutdiff.models.ast import Binary, BoolConst, Expression, IntConst, Unary, VarRef
from mutdiff.models.schemas.config import DomainConfig

Value = Union[int, bool]
VariableEnvironment = Dict[str, Value]


def in_domain(value: int, domain: DomainConfig, location: Any = None) -> int:
    if not domain.int_min <= value <= domain.int_max:
        raise DomainOverflowException(value, location)
    return value


def truncated_divmod(lhs: int, rhs: int, location: Any = None):
    if rhs == 0:
        raise DivisionByZeroException(location)
    quotient = abs(lhs) // abs(rhs)
    if (lhs < 0) != (rhs < 0):
        quotient = -quotient
    return quotient, lhs - rhs * quotient


def apply_binary(op: str, lhs: Value, rhs: Value, domain: DomainConfig, location: Any = None) -> Value:
    if op == "+":
        return in_domain(lhs + rhs, domain, location)
    if op == "-":
        return in_domain(lhs - rhs, domain, location)
    if op == "*":
        return in_domain(lhs * rhs, domain, location)
    if op == "/":
        return in_domain(truncated_divmod(lhs, rhs, location)[0], domain, location)
    if op == "%":
        return in_domain(truncated_divmod(lhs, rhs, location)[1], domain, location)
    if op == "<":
        return lhs < rhs
    if op == "<=":
        return lhs <= rhs
    if op == ">":
        return lhs > rhs
    if op == ">=":
        return lhs >= rhs
    if op == "==":
        return lhs == rhs
    if op == "!=":
        return lhs != rhs
    if op == "and":
        return lhs and rhs
    if op == "or":
        return lhs or rhs
    raise ValueError(f"unknown binary operator {op!r}")


def apply_unary(op: str, operand: Value, domain: DomainConfig, location: Any = None) -> Value:
    if op == "-":
        return in_domain(-operand, domain, location)
    if op == "not":
        return not operand
    raise ValueError(f"unknown unary operator {op!r}")


def evaluate_expression(expr: Expression, env: VariableEnvironment, domain: DomainConfig) -> Value:
    """Evaluate an expression over an environment; 'and'/'or' short-circuit."""
    if isinstance(expr, IntConst):
        return in_domain(expr.value, domain, expr.loc)
    if isinstance(expr, BoolConst):
        return expr.value
    if isinstance(expr, VarRef):
        try:
            return env[expr.name]
        except KeyError:
            raise UseBeforeDefinitionException(expr.name, expr.loc) from None
    if isinstance(expr, Unary):
        return apply_unary(expr.op, evaluate_expression(expr.operand, env, domain), domain, expr.loc)
    if isinstance(expr, Binary):
        lhs = evaluate_expression(expr.lhs, env, domain)
        if expr.op == "and" and not lhs:
            return False
        if expr.op == "or" and lhs:
            return True
        rhs = evaluate_expression(expr.rhs, env, domain)
        return apply_binary(expr.op, lhs, rhs, domain, expr.loc)
    raise TypeError(f"not an expression: {expr!r}")
