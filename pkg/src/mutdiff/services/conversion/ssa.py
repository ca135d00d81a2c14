"""Static single assignment conversion of loop-free programs.

Inputs are version 0; every other variable gets version 1 at its first definition and one
more per assignment. After each conditional, one Phi per variable assigned in either branch
merges the branch-final versions under the branch guard, which is the conjunction of all
enclosing conditions. Assignments inside branches carry that guard as their path condition.

A conditional without else that ends a then-branch is processed after the enclosing merge,
guarded by the enclosing condition. Unrolled loops have exactly this shape and this gives
the familiar layout ``res_3 = Phi((i_1 < a_0), res_2, res_1)`` followed by the flag merge.
"""
from dataclasses import replace
from typing import Dict, List, Mapping, Optional, Tuple

from mutdiff.constants import MUTANT_SUFFIX
from mutdiff.exceptions import InvalidInputException, UseBeforeDefinitionException
from mutdiff.models.ast import (
    Assign,
    Binary,
    Decl,
    Expression,
    If,
    LoopFreeProgram,
    Statement,
    Unary,
    VarRef,
    VarType,
    While,
)
from mutdiff.models.schemas.config import DomainConfig
from mutdiff.models.ssa import Phi, SsaAssignment, SsaProgram
from mutdiff.services.lang.printer import format_expression, format_guard
from mutdiff.services.lang.rename import rename_expression
from mutdiff.services.lang.semantics import VariableEnvironment, evaluate_expression, in_domain


def ssa_name(base: str, version: int) -> str:
    return f"{base}_{version}"


def conjoin(path: Optional[Expression], cond: Expression) -> Expression:
    return cond if path is None else Binary("and", path, cond)


class SsaBuilder:
    def __init__(self, lfp: LoopFreeProgram):
        self.lfp = lfp
        self.base_types: Dict[str, VarType] = lfp.program.variable_types
        self.current: Dict[str, int] = {name: 0 for name in lfp.program.input_names}
        self.counters: Dict[str, int] = dict(self.current)
        self.assignments: List[SsaAssignment] = []
        self.types: Dict[str, VarType] = {
            ssa_name(name, 0): self.base_types[name] for name in lfp.program.input_names
        }

    def build(self) -> SsaProgram:
        program = self.lfp.program
        self._process_block(program.body, None)
        input_versions = {name: ssa_name(name, 0) for name in program.input_names}
        final_versions = {base: ssa_name(base, version) for base, version in self.current.items()}
        return SsaProgram(
            name=program.name,
            assignments=tuple(self.assignments),
            input_versions=input_versions,
            final_versions=final_versions,
            variable_types=self.types,
            outputs=program.output_names,
            flags=self.lfp.loop_flags,
            nd=self.lfp.nd,
        )

    def _rename(self, expr: Expression) -> Expression:
        if isinstance(expr, VarRef):
            if expr.name not in self.current:
                raise UseBeforeDefinitionException(expr.name, expr.loc)
            return replace(expr, name=ssa_name(expr.name, self.current[expr.name]))
        if isinstance(expr, Binary):
            return replace(expr, lhs=self._rename(expr.lhs), rhs=self._rename(expr.rhs))
        if isinstance(expr, Unary):
            return replace(expr, operand=self._rename(expr.operand))
        return expr

    def _define(self, base: str, rhs, path: Optional[Expression], declared_type: Optional[VarType] = None) -> None:
        version = self.counters.get(base, 0) + 1
        self.counters[base] = version
        self.current[base] = version
        target = ssa_name(base, version)
        self.types[target] = self.base_types[base]
        self.assignments.append(SsaAssignment(target, base, rhs, path, declared_type))

    def _process_block(self, body: Tuple[Statement, ...], path: Optional[Expression]) -> None:
        for stmt in body:
            self._process(stmt, path)

    def _process(self, stmt: Statement, path: Optional[Expression]) -> None:
        if isinstance(stmt, Decl):
            self._define(stmt.name, self._rename(stmt.init), path, stmt.var_type)
        elif isinstance(stmt, Assign):
            self._define(stmt.target, self._rename(stmt.value), path)
        elif isinstance(stmt, If):
            self._process_if(stmt, path, self._rename(stmt.cond))
        elif isinstance(stmt, While):
            raise ValueError("SSA conversion needs a loop-free program")
        else:
            raise TypeError(f"not a statement: {stmt!r}")

    def _process_if(self, stmt: If, path: Optional[Expression], cond: Expression) -> None:
        then_guard = conjoin(path, cond)
        else_guard = conjoin(path, Unary("not", cond))

        then_body, tail = stmt.then_body, None
        if then_body and isinstance(then_body[-1], If) and not then_body[-1].else_body:
            then_body, tail = then_body[:-1], then_body[-1]

        before = dict(self.current)
        start = len(self.assignments)
        self._process_block(then_body, then_guard)
        then_versions = dict(self.current)
        then_order = [a.base for a in self.assignments[start:]]
        tail_cond = self._rename(tail.cond) if tail is not None else None

        self.current = dict(before)
        start = len(self.assignments)
        self._process_block(stmt.else_body, else_guard)
        else_versions = dict(self.current)
        else_order = [a.base for a in self.assignments[start:]]

        # Variables first defined in one branch only stay visible for the lifted tail
        self.current = {**else_versions, **then_versions}
        for base in dict.fromkeys(then_order + else_order):
            then_version, else_version = then_versions.get(base), else_versions.get(base)
            if then_version is None or else_version is None or then_version == else_version:
                continue
            self._define(base, Phi(then_guard, ssa_name(base, then_version), ssa_name(base, else_version)), None)

        if tail is not None:
            self._process_if(tail, then_guard, tail_cond)


def to_ssa(lfp: LoopFreeProgram) -> SsaProgram:
    return SsaBuilder(lfp).build()


def _neutral_value(var_type: VarType, domain: DomainConfig):
    return domain.neutral_int if var_type == VarType.INT else False


def evaluate_assignment(
    assignment: SsaAssignment, env: VariableEnvironment, var_type: VarType, domain: DomainConfig
):
    """Value of one SSA assignment under env; a false path condition yields the neutral value."""
    if assignment.path is not None and not evaluate_expression(assignment.path, env, domain):
        return _neutral_value(var_type, domain)
    if isinstance(assignment.rhs, Phi):
        phi = assignment.rhs
        return env[phi.then_value] if evaluate_expression(phi.guard, env, domain) else env[phi.else_value]
    return evaluate_expression(assignment.rhs, env, domain)


def bind_ssa_inputs(s: SsaProgram, inputs: Mapping, domain: DomainConfig) -> VariableEnvironment:
    """Accepts base names (a) or version-0 names (a_0) as keys."""
    by_ssa_name = {}
    known = set(s.input_versions.values())
    for key, value in inputs.items():
        name = s.input_versions.get(key, key)
        if name not in known:
            raise InvalidInputException(f"'{key}' is not an input of {s.name}")
        by_ssa_name[name] = value
    missing = known - set(by_ssa_name)
    if missing:
        raise InvalidInputException(f"missing inputs: {sorted(missing)}")
    for name, value in by_ssa_name.items():
        if s.variable_types[name] == VarType.BOOL:
            if not isinstance(value, bool):
                raise InvalidInputException(f"input '{name}' must be a bool, got {value!r}")
        else:
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInputException(f"input '{name}' must be an int, got {value!r}")
            in_domain(value, domain, f"input '{name}'")
    return by_ssa_name


def evaluate_ssa_environment(
    s: SsaProgram, inputs: Mapping, domain: Optional[DomainConfig] = None
) -> VariableEnvironment:
    """Sequentially evaluate every assignment and return the complete SSA environment."""
    domain = domain or DomainConfig()
    env = bind_ssa_inputs(s, inputs, domain)
    for assignment in s.assignments:
        env[assignment.target] = evaluate_assignment(assignment, env, s.variable_types[assignment.target], domain)
    return env


def eval_ssa(s: SsaProgram, inputs: Mapping, domain: Optional[DomainConfig] = None) -> VariableEnvironment:
    """Final versions of the outputs and loop flags, keyed by SSA name (e.g. res_3, loop_4_3).

    Raises DomainOverflowException or DivisionByZeroException like the interpreter.
    """
    env = evaluate_ssa_environment(s, inputs, domain)
    return {name: env[name] for name in s.output_versions + s.flag_versions}


def rename_for_mutant(s: SsaProgram, suffix: str = MUTANT_SUFFIX) -> SsaProgram:
    """Append suffix to every SSA name; maps stay keyed by base variable."""

    def rename_value(value):
        if isinstance(value, Phi):
            return Phi(rename_expression(value.guard, suffix), value.then_value + suffix, value.else_value + suffix)
        return rename_expression(value, suffix)

    assignments = tuple(
        replace(
            a,
            target=a.target + suffix,
            rhs=rename_value(a.rhs),
            path=rename_expression(a.path, suffix) if a.path is not None else None,
        )
        for a in s.assignments
    )
    return replace(
        s,
        assignments=assignments,
        input_versions={base: name + suffix for base, name in s.input_versions.items()},
        final_versions={base: name + suffix for base, name in s.final_versions.items()},
        variable_types={name + suffix: var_type for name, var_type in s.variable_types.items()},
        suffix=s.suffix + suffix,
    )


def format_ssa_assignment(assignment: SsaAssignment, show_paths: bool = False) -> str:
    if isinstance(assignment.rhs, Phi):
        phi = assignment.rhs
        rhs = f"Phi({format_guard(phi.guard)}, {phi.then_value}, {phi.else_value})"
    else:
        rhs = format_expression(assignment.rhs)
    prefix = f"{assignment.declared_type.value} " if assignment.declared_type else ""
    line = f"{prefix}{assignment.target} = {rhs};"
    if show_paths and assignment.path is not None:
        line += f"  // when {format_guard(assignment.path)}"
    return line


def pretty_print_ssa(s: SsaProgram, show_paths: bool = False) -> str:
    return "".join(format_ssa_assignment(a, show_paths) + "\n" for a in s.assignments)
