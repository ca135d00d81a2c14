from dataclasses import replace
from typing import Tuple

from mutdiff.models.ast import Assign, Binary, Decl, Expression, If, Program, Statement, Unary, VarDecl, VarRef, While


def rename_expression(expr: Expression, suffix: str) -> Expression:
    if isinstance(expr, VarRef):
        return replace(expr, name=expr.name + suffix)
    if isinstance(expr, Binary):
        return replace(expr, lhs=rename_expression(expr.lhs, suffix), rhs=rename_expression(expr.rhs, suffix))
    if isinstance(expr, Unary):
        return replace(expr, operand=rename_expression(expr.operand, suffix))
    return expr


def _rename_body(body: Tuple[Statement, ...], suffix: str) -> Tuple[Statement, ...]:
    return tuple(_rename_statement(stmt, suffix) for stmt in body)


def _rename_statement(stmt: Statement, suffix: str) -> Statement:
    if isinstance(stmt, Decl):
        return replace(stmt, name=stmt.name + suffix, init=rename_expression(stmt.init, suffix))
    if isinstance(stmt, Assign):
        return replace(stmt, target=stmt.target + suffix, value=rename_expression(stmt.value, suffix))
    if isinstance(stmt, If):
        return replace(
            stmt,
            cond=rename_expression(stmt.cond, suffix),
            then_body=_rename_body(stmt.then_body, suffix),
            else_body=_rename_body(stmt.else_body, suffix),
        )
    if isinstance(stmt, While):
        return replace(stmt, cond=rename_expression(stmt.cond, suffix), body=_rename_body(stmt.body, suffix))
    raise TypeError(f"not a statement: {stmt!r}")


def rename_program(program: Program, suffix: str) -> Program:
    """Append suffix to every variable of a program. Source locations are preserved."""
    return Program(
        name=program.name,
        inputs=tuple(VarDecl(decl.name + suffix, decl.var_type) for decl in program.inputs),
        outputs=tuple(VarDecl(decl.name + suffix, decl.var_type) for decl in program.outputs),
        body=_rename_body(program.body, suffix),
    )
