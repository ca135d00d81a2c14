from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from mutdiff.constants import MUTANT_SUFFIX
from mutdiff.exceptions import InvalidInputException, NoOutputsException
from mutdiff.models.ast import Binary, BoolConst, IntConst, VarRef, VarType
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
from mutdiff.models.ssa import Phi, SsaProgram
from mutdiff.services.lang.printer import format_expression, format_guard


def encode(s: SsaProgram, domain: Optional[DomainConfig] = None) -> ConstraintSystem:
    """One equation per SSA assignment; version-0 inputs stay free."""
    constraints: List[Constraint] = []
    for assignment in s.assignments:
        if isinstance(assignment.rhs, Phi):
            phi = assignment.rhs
            constraints.append(PhiEq(assignment.target, phi.guard, phi.then_value, phi.else_value))
        else:
            constraints.append(Eq(assignment.target, assignment.rhs, assignment.path))

    return ConstraintSystem(
        variables=dict(s.variable_types),
        constraints=tuple(constraints),
        domain=domain or DomainConfig(),
        input_vars=tuple(s.input_versions.values()),
        output_vars=s.output_versions,
        flag_vars=s.flag_versions,
        name=s.name,
    )


def build_joint_system(
    con_p: ConstraintSystem,
    con_m: ConstraintSystem,
    input_pairs: Sequence[Tuple[str, str]],
    output_pairs: Sequence[Tuple[str, str]],
) -> ConstraintSystem:
    """CON_P and CON_M joined: inputs tied pairwise, and at least one output pair must differ.

    Raises:
        NoOutputsException: output_pairs is empty
        ValueError: a mutant-side variable lacks the mutant suffix or the two sides share a name
    """
    if not output_pairs:
        raise NoOutputsException(f"no output pairs to distinguish {con_p.name}")
    unsuffixed = [name for name in con_m.variables if not name.endswith(MUTANT_SUFFIX)]
    if unsuffixed:
        raise ValueError(f"mutant-side variables must end in '{MUTANT_SUFFIX}': {unsuffixed}")
    shared = set(con_p.variables) & set(con_m.variables)
    if shared:
        raise ValueError(f"program and mutant systems share variables: {sorted(shared)}")

    ties = tuple(InputTie(var, var_m) for var, var_m in input_pairs)
    return ConstraintSystem(
        variables={**con_p.variables, **con_m.variables},
        constraints=con_p.constraints + con_m.constraints + ties + (OutputDiffers(tuple(output_pairs)),),
        domain=con_p.domain,
        input_vars=con_p.input_vars,
        output_vars=con_p.output_vars + con_m.output_vars,
        output_pairs=tuple(output_pairs),
        flag_vars=con_p.flag_vars + con_m.flag_vars,
        name=f"{con_p.name}+{con_m.name}" if con_p.name != con_m.name else con_p.name,
    )


def fix_inputs(cs: ConstraintSystem, env: Mapping[str, Any]) -> ConstraintSystem:
    """Pin input variables to values with Assert(x == v) constraints."""
    fixed = []
    for name, value in env.items():
        if name not in cs.variables:
            raise InvalidInputException(f"'{name}' is not a variable of {cs.name}")
        if cs.variables[name] == VarType.BOOL:
            literal = BoolConst(bool(value))
        else:
            literal = IntConst(int(value))
        fixed.append(Assert(Binary("==", VarRef(name), literal)))
    return cs.with_constraints(fixed)


def format_constraint(constraint: Constraint, show_paths: bool = False) -> str:
    if isinstance(constraint, Eq):
        text = f"{constraint.var} = {format_expression(constraint.expr)};"
        if show_paths and constraint.path is not None:
            text += f"  // when {format_guard(constraint.path)}"
        return text
    if isinstance(constraint, PhiEq):
        return f"{constraint.var} = Φ({format_guard(constraint.guard)}, {constraint.then_var}, {constraint.else_var});"
    if isinstance(constraint, InputTie):
        return f"{constraint.var} = {constraint.var_m};"
    if isinstance(constraint, OutputDiffers):
        return " or ".join(f"({y} != {y_m})" for y, y_m in constraint.pairs) + ";"
    if isinstance(constraint, Blocking):
        tuple_text = " and ".join(f"({name} = {_literal(value)})" for name, value in constraint.assignment)
        return f"not ({tuple_text});"
    if isinstance(constraint, FlagValue):
        return f"{constraint.var} = {_literal(constraint.value)};"
    if isinstance(constraint, Assert):
        return f"assert {format_expression(constraint.expr)};"
    raise TypeError(f"not a constraint: {constraint!r}")


def _literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def pretty_print_constraints(cs: ConstraintSystem, show_paths: bool = False) -> str:
    return "".join(format_constraint(c, show_paths) + "\n" for c in cs.constraints)


def _constraint_record(constraint: Constraint) -> Dict[str, Any]:
    if isinstance(constraint, Eq):
        path = format_expression(constraint.path) if constraint.path is not None else None
        return {"kind": "eq", "var": constraint.var, "expr": format_expression(constraint.expr), "path": path}
    if isinstance(constraint, PhiEq):
        return {
            "kind": "phi",
            "var": constraint.var,
            "guard": format_expression(constraint.guard),
            "then": constraint.then_var,
            "else": constraint.else_var,
        }
    if isinstance(constraint, InputTie):
        return {"kind": "input_tie", "var": constraint.var, "var_m": constraint.var_m}
    if isinstance(constraint, OutputDiffers):
        return {"kind": "output_differs", "pairs": [list(pair) for pair in constraint.pairs]}
    if isinstance(constraint, Blocking):
        return {"kind": "blocking", "assignment": constraint.as_dict()}
    if isinstance(constraint, FlagValue):
        return {"kind": "flag_value", "var": constraint.var, "value": constraint.value}
    return {"kind": "assert", "expr": format_expression(constraint.expr)}


def system_to_dict(cs: ConstraintSystem) -> Dict[str, Any]:
    """JSON-ready dump of a constraint system."""
    return {
        "name": cs.name,
        "domain": {"int_min": cs.domain.int_min, "int_max": cs.domain.int_max},
        "variables": {name: var_type.value for name, var_type in cs.variables.items()},
        "inputs": list(cs.input_vars),
        "outputs": list(cs.output_vars),
        "output_pairs": [list(pair) for pair in cs.output_pairs],
        "flags": list(cs.flag_vars),
        "constraints": [_constraint_record(c) for c in cs.constraints],
    }
