from typing import List, Tuple

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
    VarRef,
    While,
)

INDENT = "  "


def format_expression(expr: Expression) -> str:
    """Canonical text of an expression; nested binary operands are always parenthesized."""
    if isinstance(expr, IntConst):
        return str(expr.value)
    if isinstance(expr, BoolConst):
        return "true" if expr.value else "false"
    if isinstance(expr, VarRef):
        return expr.name
    if isinstance(expr, Binary):
        return f"{_operand(expr.lhs)} {expr.op} {_operand(expr.rhs)}"
    if isinstance(expr, Unary):
        operand = expr.operand
        if expr.op == "-":
            # "-(3)" keeps a negated literal distinct from the literal -3
            wrapped = isinstance(operand, (Binary, Unary, IntConst))
            text = format_expression(operand)
            return f"-({text})" if wrapped else f"-{text}"
        wrapped = isinstance(operand, Binary)
        text = format_expression(operand)
        return f"not ({text})" if wrapped else f"not {text}"
    raise TypeError(f"not an expression: {expr!r}")


def _operand(expr: Expression) -> str:
    text = format_expression(expr)
    return f"({text})" if isinstance(expr, Binary) else text


def format_guard(expr: Expression) -> str:
    """A condition as it appears in Phi functions and constraints: always parenthesized."""
    return f"({format_expression(expr)})"


def _statement_lines(stmt: Statement, level: int) -> List[str]:
    pad = INDENT * level
    if isinstance(stmt, Decl):
        return [f"{pad}{stmt.var_type.value} {stmt.name} = {format_expression(stmt.init)};"]
    if isinstance(stmt, Assign):
        return [f"{pad}{stmt.target} = {format_expression(stmt.value)};"]
    if isinstance(stmt, If):
        lines = [f"{pad}if ({format_expression(stmt.cond)}) {{"]
        lines += _block_lines(stmt.then_body, level + 1)
        if stmt.else_body:
            lines.append(f"{pad}}} else {{")
            lines += _block_lines(stmt.else_body, level + 1)
        lines.append(f"{pad}}}")
        return lines
    if isinstance(stmt, While):
        lines = [f"{pad}while ({format_expression(stmt.cond)}) {{"]
        lines += _block_lines(stmt.body, level + 1)
        lines.append(f"{pad}}}")
        return lines
    raise TypeError(f"not a statement: {stmt!r}")


def _block_lines(body: Tuple[Statement, ...], level: int) -> List[str]:
    lines: List[str] = []
    for stmt in body:
        lines += _statement_lines(stmt, level)
    return lines


def pretty_print_statements(body: Tuple[Statement, ...]) -> str:
    return "\n".join(_block_lines(body, 0)) + ("\n" if body else "")


def format_header(program: Program) -> str:
    parts = [f"program {program.name};"]
    parts += [f"input {decl.var_type.value} {decl.name};" for decl in program.inputs]
    parts += [f"output {decl.var_type.value} {decl.name};" for decl in program.outputs]
    return " ".join(parts)


def pretty_print(program: Program) -> str:
    """Canonical source text: the header on one line, then one statement per line."""
    return format_header(program) + "\n" + pretty_print_statements(program.body)
