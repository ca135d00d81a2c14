"""Compilation of expressions and constraints to Python closures for the search."""
import operator
from typing import Callable, Dict, Optional, Set

from mutdiff.exceptions import DomainOverflowException, ExecutionException
from mutdiff.models.ast import Binary, BoolConst, Expression, IntConst, Unary, VarRef, VarType, referenced_variables
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
from mutdiff.models.schemas.config import DomainConfig
from mutdiff.services.lang.semantics import Value, truncated_divmod

Env = Dict[str, Value]
Evaluator = Callable[[Env], Value]

_RELATIONS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
    "!=": operator.ne,
}


def compile_expression(expr: Expression, domain: DomainConfig) -> Evaluator:
    """Closure with the value semantics of evaluate_expression; failures raise ExecutionException."""
    lo, hi = domain.int_min, domain.int_max

    def checked(value: int) -> int:
        if value < lo or value > hi:
            raise DomainOverflowException(value)
        return value

    if isinstance(expr, IntConst):
        value = expr.value
        if lo <= value <= hi:
            return lambda env: value

        def overflow(env):
            raise DomainOverflowException(value, expr.loc)

        return overflow
    if isinstance(expr, BoolConst):
        value = expr.value
        return lambda env: value
    if isinstance(expr, VarRef):
        name = expr.name
        return lambda env: env[name]
    if isinstance(expr, Unary):
        operand = compile_expression(expr.operand, domain)
        if expr.op == "not":
            return lambda env: not operand(env)
        return lambda env: checked(-operand(env))
    if isinstance(expr, Binary):
        lhs = compile_expression(expr.lhs, domain)
        rhs = compile_expression(expr.rhs, domain)
        op = expr.op
        if op == "and":
            return lambda env: bool(lhs(env)) and bool(rhs(env))
        if op == "or":
            return lambda env: bool(lhs(env)) or bool(rhs(env))
        if op in _RELATIONS:
            relation = _RELATIONS[op]
            return lambda env: relation(lhs(env), rhs(env))
        if op == "+":
            return lambda env: checked(lhs(env) + rhs(env))
        if op == "-":
            return lambda env: checked(lhs(env) - rhs(env))
        if op == "*":
            return lambda env: checked(lhs(env) * rhs(env))
        if op == "/":
            return lambda env: checked(truncated_divmod(lhs(env), rhs(env))[0])
        if op == "%":
            return lambda env: checked(truncated_divmod(lhs(env), rhs(env))[1])
    raise TypeError(f"cannot compile {expr!r}")


def constraint_dependencies(constraint: Constraint) -> Set[str]:
    """Variables a constraint reads, excluding the variable it defines."""
    if isinstance(constraint, Eq):
        names = set(referenced_variables(constraint.expr))
        if constraint.path is not None:
            names |= set(referenced_variables(constraint.path))
        return names
    if isinstance(constraint, PhiEq):
        return set(referenced_variables(constraint.guard)) | {constraint.then_var, constraint.else_var}
    if isinstance(constraint, InputTie):
        return {constraint.var}
    if isinstance(constraint, OutputDiffers):
        return {name for pair in constraint.pairs for name in pair}
    if isinstance(constraint, Blocking):
        return {name for name, _ in constraint.assignment}
    if isinstance(constraint, FlagValue):
        return {constraint.var}
    if isinstance(constraint, Assert):
        return set(referenced_variables(constraint.expr))
    raise TypeError(f"not a constraint: {constraint!r}")


def defined_variable(constraint: Constraint) -> Optional[str]:
    """The variable a functional constraint can define, if any."""
    if isinstance(constraint, (Eq, PhiEq)):
        return constraint.var
    if isinstance(constraint, InputTie):
        return constraint.var_m
    return None


def compile_definition(constraint: Constraint, cs: ConstraintSystem) -> Evaluator:
    """Closure computing the value of the variable a functional constraint defines."""
    domain = cs.domain
    if isinstance(constraint, Eq):
        expr = compile_expression(constraint.expr, domain)
        if constraint.path is None:
            return expr
        path = compile_expression(constraint.path, domain)
        neutral = domain.neutral_int if cs.variables[constraint.var] == VarType.INT else False
        return lambda env: expr(env) if path(env) else neutral
    if isinstance(constraint, PhiEq):
        guard = compile_expression(constraint.guard, domain)
        then_var, else_var = constraint.then_var, constraint.else_var
        return lambda env: env[then_var] if guard(env) else env[else_var]
    if isinstance(constraint, InputTie):
        source = constraint.var
        return lambda env: env[source]
    raise TypeError(f"{constraint!r} defines no variable")


def compile_check(constraint: Constraint, cs: ConstraintSystem) -> Callable[[Env], bool]:
    """Closure telling whether a constraint holds; evaluation failures count as violations."""
    if isinstance(constraint, (Eq, PhiEq, InputTie)):
        var = defined_variable(constraint)
        compute = compile_definition(constraint, cs)

        def body(env: Env) -> bool:
            return _same(env[var], compute(env))

    elif isinstance(constraint, OutputDiffers):
        pairs = constraint.pairs

        def body(env: Env) -> bool:
            return any(not _same(env[y], env[y_m]) for y, y_m in pairs)

    elif isinstance(constraint, Blocking):
        items = constraint.assignment

        def body(env: Env) -> bool:
            return not all(_same(env[name], value) for name, value in items)

    elif isinstance(constraint, FlagValue):
        flag, expected = constraint.var, constraint.value

        def body(env: Env) -> bool:
            return env[flag] is expected

    elif isinstance(constraint, Assert):
        expr = compile_expression(constraint.expr, cs.domain)

        def body(env: Env) -> bool:
            return expr(env) is True

    else:
        raise TypeError(f"not a constraint: {constraint!r}")

    def check(env: Env) -> bool:
        try:
            return body(env)
        except ExecutionException:
            return False

    return check


def _same(lhs: Value, rhs: Value) -> bool:
    return lhs == rhs and isinstance(lhs, bool) == isinstance(rhs, bool)

