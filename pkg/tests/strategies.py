"""hypothesis strategies producing well-typed mini-language programs"""
from hypothesis import strategies as st

from mutdiff.models.ast import Program
from mutdiff.services.lang.parser import parse

ARITHMETIC = ("+", "-", "*", "/", "%")
RELATIONAL = ("<", "<=", ">", ">=", "==", "!=")


@st.composite
def int_expressions(draw, names, depth=2):
    if depth == 0 or draw(st.booleans()):
        if draw(st.booleans()):
            return draw(st.sampled_from(names))
        return str(draw(st.integers(min_value=0, max_value=3)))
    op = draw(st.sampled_from(ARITHMETIC))
    lhs = draw(int_expressions(names, depth - 1))
    rhs = draw(int_expressions(names, depth - 1))
    return f"({lhs} {op} {rhs})"


@st.composite
def bool_expressions(draw, names, depth=1):
    comparison = (
        f"({draw(int_expressions(names, 1))} {draw(st.sampled_from(RELATIONAL))} "
        f"{draw(int_expressions(names, 1))})"
    )
    if depth == 0 or draw(st.booleans()):
        return comparison
    kind = draw(st.sampled_from(("and", "or", "not")))
    if kind == "not":
        return f"not {comparison}"
    return f"({comparison} {kind} {draw(bool_expressions(names, depth - 1))})"


@st.composite
def branches(draw, names, depth=1):
    """An if/else over `res` whose branches may nest another if/else."""
    names = list(names)
    cond = draw(bool_expressions([n for n in names if n != "flag"]))
    if "flag" in names and draw(st.booleans()):
        cond = f"(flag {draw(st.sampled_from(('and', 'or')))} {cond})"
    lines = [f"if ({cond}) {{", f"  res = {draw(int_expressions([n for n in names if n != 'flag']))};"]
    if depth > 0 and draw(st.booleans()):
        lines += [f"  {line}" for line in draw(branches(names, depth - 1))]
    lines.append("} else {")
    if depth > 0 and draw(st.booleans()):
        lines += [f"  {line}" for line in draw(branches(names, depth - 1))]
    else:
        lines.append(f"  res = {draw(int_expressions(['a', 'res']))};")
    lines.append("}")
    return lines


@st.composite
def loop_body(draw):
    """Body of the outer counting loop: an optional local, an optional inner loop and the step."""
    names = ["a", "b", "res", "i"]
    lines = []
    if draw(st.booleans()):
        lines.append(f"int t = {draw(int_expressions(names))};")
        names.append("t")
    lines.append(f"res = {draw(int_expressions(names))};")
    if draw(st.booleans()):
        # the inner counter is declared in the body so it restarts on every outer iteration
        lines += [
            "int j = 0;",
            f"while (j < {draw(st.sampled_from(['1', '2', 'i']))}) {{",
            f"  res = {draw(int_expressions(names + ['j']))};",
            "  j = j + 1;",
            "}",
        ]
    lines.append("i = i + 1;")
    return lines


@st.composite
def program_sources(draw):
    """Two int inputs and one int output; an optional bool local, an optional counting loop with
    locals and an inner loop, and a closing conditional with nested branches."""
    lines = [
        "program rnd; input int a; input int b; output int res;",
        f"int res = {draw(int_expressions(['a', 'b']))};",
    ]
    names = ["a", "b", "res"]
    if draw(st.booleans()):
        lines.append(f"bool flag = {draw(bool_expressions(['a', 'b']))};")
        names.append("flag")
    if draw(st.booleans()):
        bound = draw(st.sampled_from(["a", "b", "2", "3"]))
        lines += ["int i = 0;", f"while (i < {bound}) {{"]
        lines += [f"  {line}" for line in draw(loop_body())]
        lines.append("}")
    lines += draw(branches(names))
    return "\n".join(lines) + "\n"


def programs() -> st.SearchStrategy[Program]:
    return program_sources().map(parse)
