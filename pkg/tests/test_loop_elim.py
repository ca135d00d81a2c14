import pytest

from conftest import GOLDEN_DIR, ORACLE_MAX_STEPS, all_inputs, corpus_names, load_corpus_program
from mutdiff.exceptions import ExecutionException
from mutdiff.models.ast import Assign, BoolConst, Decl, While, iter_statements
from mutdiff.models.schemas.config import DomainConfig
from mutdiff.services.conversion.loop_elim import eliminate_loops, flag_variables
from mutdiff.services.lang.interpreter import interpret, run_program
from mutdiff.services.lang.parser import parse
from mutdiff.services.lang.printer import pretty_print

TWO_LOOPS = """program two; input int a; output int res;
int i = 0;
while (i < a) {
  i = i + 1;
}
int res = i;
int j = 0;
while (j < a) {
  res = res + 1;
  j = j + 1;
}
"""

NESTED = """program nested; input int a; input int b; output int res;
int res = 0;
int i = 0;
while (i < a) {
  int j = 0;
  while (j < b) {
    res = res + 1;
    j = j + 1;
  }
  i = i + 1;
}
"""

TINY = DomainConfig(int_min=0, int_max=7)


def test_mult_nd1_matches_golden(mult):
    lfp = eliminate_loops(mult, 1)
    assert pretty_print(lfp.program) == (GOLDEN_DIR / "mult_nd1_loops.mlang").read_text()


def test_no_while_left(mult):
    lfp = eliminate_loops(mult, 3)
    assert not any(isinstance(stmt, While) for stmt in iter_statements(lfp.body))
    assert lfp.nd == 3


def test_flag_declared_false_and_set_once(mult):
    lfp = eliminate_loops(mult, 2)
    statements = list(iter_statements(lfp.body))
    decls = [s for s in statements if isinstance(s, Decl) and s.name == "loop_4"]
    sets = [s for s in statements if isinstance(s, Assign) and s.target == "loop_4"]
    assert [d.init for d in decls] == [BoolConst(False)]
    assert len(sets) == 1 and sets[0].value == BoolConst(True)


def test_mult_nd2_interpretation(mult):
    lfp = eliminate_loops(mult, 2)
    result = run_program(lfp.program, {"a": 2, "b": 3})
    assert result.outputs == {"res": 6}
    assert result.environment["loop_4"] is False


def test_loop_free_program_is_unchanged():
    program = parse("program id; input int a; output int res;\nres = a;\n")
    lfp = eliminate_loops(program, 2)
    assert lfp.program == program
    assert flag_variables(lfp) == []


def test_flag_variables(mult):
    assert flag_variables(eliminate_loops(mult, 1)) == ["loop_4"]
    assert flag_variables(eliminate_loops(parse(TWO_LOOPS), 2)) == ["loop_3", "loop_8"]


def test_flag_name_avoids_program_variables():
    program = parse(
        "program clash; input int a; output int res;\n"
        "int loop_3 = 0;\n"
        "while (loop_3 < a) {\n"
        "  loop_3 = loop_3 + 1;\n"
        "}\n"
        "int res = loop_3;\n"
    )
    assert flag_variables(eliminate_loops(program, 1)) == ["loop_3_"]


@pytest.mark.parametrize("nd", [0, -1])
def test_nd_must_be_positive(mult, nd):
    with pytest.raises(ValueError):
        eliminate_loops(mult, nd)


def test_nested_loops_share_one_flag_per_loop():
    program = parse(NESTED)
    lfp = eliminate_loops(program, 2)
    assert flag_variables(lfp) == ["loop_4", "loop_6"]
    decls = [s for s in iter_statements(lfp.body) if isinstance(s, Decl) and s.name.startswith("loop_")]
    assert sorted(d.name for d in decls) == ["loop_4", "loop_6"]

    for inputs in all_inputs(program, TINY):
        try:
            original = run_program(program, inputs, ORACLE_MAX_STEPS, TINY)
        except ExecutionException:
            continue
        eliminated = run_program(lfp.program, inputs, ORACLE_MAX_STEPS, TINY)
        flags = [eliminated.environment[f] for f in flag_variables(lfp)]
        if original.max_iterations <= 2:
            assert eliminated.outputs == original.outputs
            assert not any(flags)
        else:
            assert any(flags)


def test_declarations_in_loop_body_are_declared_once():
    program = parse(
        "program d; input int a; output int res;\n"
        "int i = 0;\n"
        "int res = 0;\n"
        "while (i < a) {\n"
        "  int t = i * 2;\n"
        "  res = res + t;\n"
        "  i = i + 1;\n"
        "}\n"
    )
    lfp = eliminate_loops(program, 3)
    assert sum(isinstance(s, Decl) and s.name == "t" for s in iter_statements(lfp.body)) == 1
    assert interpret(lfp.program, {"a": 3}, domain=TINY) == interpret(program, {"a": 3}, domain=TINY)


@pytest.mark.parametrize("name", corpus_names())
@pytest.mark.parametrize("nd", [1, 2, 3])
def test_iteration_fidelity_and_flag_soundness(name, nd):
    program = load_corpus_program(name)
    lfp = eliminate_loops(program, nd)
    flags = flag_variables(lfp)
    for inputs in all_inputs(program, TINY):
        try:
            original = run_program(program, inputs, ORACLE_MAX_STEPS, TINY)
        except ExecutionException:
            continue
        eliminated = run_program(lfp.program, inputs, ORACLE_MAX_STEPS, TINY)
        for line, iterations in original.loop_iterations.items():
            assert eliminated.environment[f"loop_{line}"] is (iterations > nd)
        if original.max_iterations <= nd:
            assert eliminated.outputs == original.outputs
            assert not any(eliminated.environment[f] for f in flags)


def test_monotonicity(mult):
    shallow, deep = eliminate_loops(mult, 2), eliminate_loops(mult, 3)
    for inputs in all_inputs(mult, TINY):
        try:
            first = run_program(shallow.program, inputs, ORACLE_MAX_STEPS, TINY)
        except ExecutionException:
            continue
        if first.environment["loop_4"]:
            continue
        second = run_program(deep.program, inputs, ORACLE_MAX_STEPS, TINY)
        assert second.outputs == first.outputs
        assert second.environment["loop_4"] is False
