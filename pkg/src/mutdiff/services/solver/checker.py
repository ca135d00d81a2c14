"""Independent constraint checker: evaluates constraints with the AST evaluator rather than the
compiled closures the search uses."""
from typing import List, Mapping

from mutdiff.exceptions import ExecutionException, UseBeforeDefinitionException
from mutdiff.models.ast import VarType
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
from mutdiff.services.lang.semantics import Value, evaluate_expression


def _same(lhs: Value, rhs: Value) -> bool:
    return type(lhs) is type(rhs) and lhs == rhs


def _holds(constraint: Constraint, cs: ConstraintSystem, env: Mapping[str, Value]) -> bool:
    domain = cs.domain
    if isinstance(constraint, Eq):
        if constraint.path is not None and not evaluate_expression(constraint.path, env, domain):
            neutral = domain.neutral_int if cs.variables[constraint.var] == VarType.INT else False
            return _same(env[constraint.var], neutral)
        return _same(env[constraint.var], evaluate_expression(constraint.expr, env, domain))
    if isinstance(constraint, PhiEq):
        chosen = constraint.then_var if evaluate_expression(constraint.guard, env, domain) else constraint.else_var
        return _same(env[constraint.var], env[chosen])
    if isinstance(constraint, InputTie):
        return _same(env[constraint.var], env[constraint.var_m])
    if isinstance(constraint, OutputDiffers):
        return any(not _same(env[y], env[y_m]) for y, y_m in constraint.pairs)
    if isinstance(constraint, Blocking):
        return not all(_same(env[name], value) for name, value in constraint.assignment)
    if isinstance(constraint, FlagValue):
        return _same(env[constraint.var], constraint.value)
    if isinstance(constraint, Assert):
        return evaluate_expression(constraint.expr, env, domain) is True
    raise TypeError(f"not a constraint: {constraint!r}")


def violated_constraints(cs: ConstraintSystem, assignment: Mapping[str, Value]) -> List[Constraint]:
    violated = []
    for constraint in cs.constraints:
        try:
            ok = _holds(constraint, cs, assignment)
        except (ExecutionException, UseBeforeDefinitionException, KeyError):
            ok = False
        if not ok:
            violated.append(constraint)
    return violated


def in_variable_domains(cs: ConstraintSystem, assignment: Mapping[str, Value]) -> bool:
    for name, var_type in cs.variables.items():
        if name not in assignment:
            return False
        value = assignment[name]
        if var_type == VarType.BOOL:
            if not isinstance(value, bool):
                return False
        elif isinstance(value, bool) or not isinstance(value, int) or not cs.domain.contains(value):
            return False
    return True


def check_assignment(cs: ConstraintSystem, assignment: Mapping[str, Value]) -> bool:
    """True iff the assignment gives every variable a value of its domain and satisfies every constraint."""
    return in_variable_domains(cs, assignment) and not violated_constraints(cs, assignment)
