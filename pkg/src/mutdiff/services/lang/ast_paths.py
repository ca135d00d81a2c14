"""Addressing of AST nodes by path, e.g. ``body[3].body[1].value.rhs``."""
import dataclasses
import re
from typing import Any, Iterator, Tuple, Union

from mutdiff.exceptions import InvalidLocationException
from mutdiff.models.ast import Binary, Decl, Expression, If, Assign, Program, Statement, Unary, While

AstPath = Tuple[Union[str, int], ...]

_SEGMENT = re.compile(r"([a-z_]+)((?:\[\d+\])*)")


def format_path(path: AstPath) -> str:
    text = ""
    for segment in path:
        if isinstance(segment, int):
            text += f"[{segment}]"
        else:
            text += f".{segment}" if text else segment
    return text


def parse_path(text: str) -> AstPath:
    path = []
    for part in text.split("."):
        match = _SEGMENT.fullmatch(part)
        if not match:
            raise InvalidLocationException(f"malformed location '{text}'")
        path.append(match.group(1))
        path += [int(index) for index in re.findall(r"\[(\d+)\]", match.group(2))]
    return tuple(path)


def get_node(root: Any, path: AstPath) -> Any:
    node = root
    for segment in path:
        try:
            node = node[segment] if isinstance(segment, int) else getattr(node, segment)
        except (IndexError, AttributeError, TypeError):
            raise InvalidLocationException(f"location '{format_path(path)}' does not exist") from None
    return node


def replace_node(root: Any, path: AstPath, new_node: Any) -> Any:
    """Return a copy of root with the node at path replaced; root itself is untouched."""
    if not path:
        return new_node
    head, rest = path[0], path[1:]
    if isinstance(head, int):
        if not isinstance(root, tuple) or not 0 <= head < len(root):
            raise InvalidLocationException(f"index {head} out of range")
        return root[:head] + (replace_node(root[head], rest, new_node),) + root[head + 1:]
    if not dataclasses.is_dataclass(root) or head not in {f.name for f in dataclasses.fields(root)}:
        raise InvalidLocationException(f"no field '{head}' on {type(root).__name__}")
    return dataclasses.replace(root, **{head: replace_node(getattr(root, head), rest, new_node)})


def iter_expression_sites(program: Program) -> Iterator[Tuple[AstPath, Expression]]:
    """Yield (path, expression) for every expression node in AST pre-order."""
    yield from _block_sites(program.body, ("body",))


def _block_sites(body: Tuple[Statement, ...], prefix: AstPath):
    for index, stmt in enumerate(body):
        yield from _statement_sites(stmt, prefix + (index,))


def _statement_sites(stmt: Statement, prefix: AstPath):
    if isinstance(stmt, Decl):
        yield from _expression_sites(stmt.init, prefix + ("init",))
    elif isinstance(stmt, Assign):
        yield from _expression_sites(stmt.value, prefix + ("value",))
    elif isinstance(stmt, If):
        yield from _expression_sites(stmt.cond, prefix + ("cond",))
        yield from _block_sites(stmt.then_body, prefix + ("then_body",))
        yield from _block_sites(stmt.else_body, prefix + ("else_body",))
    elif isinstance(stmt, While):
        yield from _expression_sites(stmt.cond, prefix + ("cond",))
        yield from _block_sites(stmt.body, prefix + ("body",))


def _expression_sites(expr: Expression, prefix: AstPath):
    yield prefix, expr
    if isinstance(expr, Binary):
        yield from _expression_sites(expr.lhs, prefix + ("lhs",))
        yield from _expression_sites(expr.rhs, prefix + ("rhs",))
    elif isinstance(expr, Unary):
        yield from _expression_sites(expr.operand, prefix + ("operand",))
