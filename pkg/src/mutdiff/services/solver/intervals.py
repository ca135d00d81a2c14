"""Interval reasoning over constraint systems.

An interval bounds the values an expression can take on the executions where it evaluates
without failing; ``None`` means every evaluation fails. Booleans use 0 for false and 1 for
true. The bounds are sound over-approximations, so an empty interval proves failure.
"""
from typing import Dict, Optional, Tuple

from mutdiff.models.ast import Binary, BoolConst, Expression, IntConst, Unary, VarRef
from mutdiff.models.constraints import (
    Assert,
    Blocking,
    Constraint,
    Eq,
    FlagValue,
    InputTie,
    OutputDiffers,
    PhiEq,
)
from mutdiff.models.schemas.config import DomainConfig

Interval = Optional[Tuple[int, int]]
IntervalEnv = Dict[str, Interval]

BOTH = (0, 1)


def _clip(lo: int, hi: int, domain: DomainConfig) -> Interval:
    lo, hi = max(lo, domain.int_min), min(hi, domain.int_max)
    return (lo, hi) if lo <= hi else None


def _join(a: Interval, b: Interval) -> Interval:
    if a is None:
        return b
    if b is None:
        return a
    return min(a[0], b[0]), max(a[1], b[1])


def _can_be(interval: Interval, truth: bool) -> bool:
    return interval is not None and interval[0] <= int(truth) <= interval[1]


def _bool_interval(can_false: bool, can_true: bool) -> Interval:
    if can_false and can_true:
        return BOTH
    if can_true:
        return (1, 1)
    if can_false:
        return (0, 0)
    return None


def _relation(op: str, a: Tuple[int, int], b: Tuple[int, int]) -> Interval:
    (alo, ahi), (blo, bhi) = a, b
    if op == "<":
        return _bool_interval(ahi >= blo, alo < bhi)
    if op == "<=":
        return _bool_interval(ahi > blo, alo <= bhi)
    if op == ">":
        return _bool_interval(alo <= bhi, ahi > blo)
    if op == ">=":
        return _bool_interval(alo < bhi, ahi >= blo)
    overlap = alo <= bhi and blo <= ahi
    single_same = alo == ahi == blo == bhi
    if op == "==":
        return _bool_interval(not single_same, overlap)
    return _bool_interval(overlap, not single_same)


def _arithmetic(op: str, a: Tuple[int, int], b: Tuple[int, int], domain: DomainConfig) -> Interval:
    (alo, ahi), (blo, bhi) = a, b
    if op == "+":
        return _clip(alo + blo, ahi + bhi, domain)
    if op == "-":
        return _clip(alo - bhi, ahi - blo, domain)
    if op == "*":
        products = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
        return _clip(min(products), max(products), domain)
    if blo == bhi == 0:
        return None
    if op == "/":
        # |a / b| <= |a| for every nonzero divisor
        bound = max(abs(alo), abs(ahi))
        return _clip(-bound, bound, domain)
    # remainder: sign of the dividend, magnitude below the largest divisor magnitude
    magnitude = min(max(abs(blo), abs(bhi)) - 1, max(abs(alo), abs(ahi)))
    lo = 0 if alo >= 0 else -magnitude
    hi = 0 if ahi <= 0 else magnitude
    return _clip(lo, hi, domain)


def expression_interval(expr: Expression, env: IntervalEnv, domain: DomainConfig) -> Interval:
    if isinstance(expr, IntConst):
        return (expr.value, expr.value) if domain.contains(expr.value) else None
    if isinstance(expr, BoolConst):
        return (int(expr.value), int(expr.value))
    if isinstance(expr, VarRef):
        return env[expr.name]
    if isinstance(expr, Unary):
        operand = expression_interval(expr.operand, env, domain)
        if operand is None:
            return None
        if expr.op == "not":
            return 1 - operand[1], 1 - operand[0]
        return _clip(-operand[1], -operand[0], domain)
    if isinstance(expr, Binary):
        lhs = expression_interval(expr.lhs, env, domain)
        if lhs is None:
            return None
        if expr.op in ("and", "or"):
            # the right operand only runs when the left one does not decide the result
            decides = expr.op == "or"
            can_decide, can_continue = _can_be(lhs, decides), _can_be(lhs, not decides)
            rhs = expression_interval(expr.rhs, env, domain) if can_continue else None
            if rhs is None:
                return _bool_interval(not decides and can_decide, decides and can_decide)
            if decides:
                return _bool_interval(_can_be(rhs, False), can_decide or _can_be(rhs, True))
            return _bool_interval(can_decide or _can_be(rhs, False), _can_be(rhs, True))
        rhs = expression_interval(expr.rhs, env, domain)
        if rhs is None:
            return None
        if expr.op in ("<", "<=", ">", ">=", "==", "!="):
            return _relation(expr.op, lhs, rhs)
        return _arithmetic(expr.op, lhs, rhs, domain)
    raise TypeError(f"not an expression: {expr!r}")


def definition_interval(
    constraint: Constraint, env: IntervalEnv, domain: DomainConfig, neutral: int
) -> Interval:
    """Interval of the variable defined by an Eq, PhiEq or InputTie."""
    if isinstance(constraint, Eq):
        value = expression_interval(constraint.expr, env, domain)
        if constraint.path is None:
            return value
        path = expression_interval(constraint.path, env, domain)
        if path is None:
            return None
        result = (neutral, neutral) if _can_be(path, False) else None
        if _can_be(path, True):
            result = _join(result, value)
        return result
    if isinstance(constraint, PhiEq):
        guard = expression_interval(constraint.guard, env, domain)
        if guard is None:
            return None
        result = env[constraint.then_var] if _can_be(guard, True) else None
        if _can_be(guard, False):
            result = _join(result, env[constraint.else_var])
        return result
    if isinstance(constraint, InputTie):
        return env[constraint.var]
    raise TypeError(f"{constraint!r} defines no variable")


def check_possible(constraint: Constraint, env: IntervalEnv, domain: DomainConfig, neutral: int = 0) -> bool:
    """False only when the constraint provably cannot hold. neutral is the value a false path
    condition gives the defined variable (0 for booleans)."""
    if isinstance(constraint, (Eq, PhiEq, InputTie)):
        var = constraint.var_m if isinstance(constraint, InputTie) else constraint.var
        value = definition_interval(constraint, env, domain, neutral)
        current = env[var]
        return value is not None and current is not None and value[0] <= current[1] and current[0] <= value[1]
    if isinstance(constraint, OutputDiffers):
        for y, y_m in constraint.pairs:
            a, b = env[y], env[y_m]
            if a is None or b is None:
                return False
            if not (a[0] == a[1] == b[0] == b[1]):
                return True
        return False
    if isinstance(constraint, FlagValue):
        return _can_be(env[constraint.var], constraint.value)
    if isinstance(constraint, Assert):
        return _can_be(expression_interval(constraint.expr, env, domain), True)
    if isinstance(constraint, Blocking):
        return True
    raise TypeError(f"not a constraint: {constraint!r}")


def point(value) -> Tuple[int, int]:
    return int(value), int(value)

