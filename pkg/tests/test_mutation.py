import pytest

from conftest import corpus_names, load_corpus_program
from mutdiff.exceptions import IllTypedMutationException, InvalidLocationException, NotAMutationException
from mutdiff.models.ast import Binary, IntConst, VarRef
from mutdiff.models.mutant import MutationEdit, MutationOperatorClass
from mutdiff.services.lang.ast_paths import get_node, parse_path, replace_node
from mutdiff.services.lang.interpreter import interpret
from mutdiff.services.lang.parser import parse
from mutdiff.services.lang.printer import pretty_print
from mutdiff.services.mutation import apply_mutation, generate_mutants, mutant_records

INCREMENT = ("body", 2, "body", 1, "value")
LOOP_CONDITION = ("body", 2, "cond")


def at(mutants, location, operator_class):
    return [m for m in mutants if m.location == location and m.operator_class == operator_class]


def test_aor_on_increment(mult):
    mutated = {m.mutated_text for m in at(generate_mutants(mult), INCREMENT, MutationOperatorClass.AOR)}
    assert {"i - 1", "i * 1"} <= mutated
    assert mutated == {"i - 1", "i * 1", "i / 1", "i % 1"}


def test_ror_on_loop_condition(mult):
    mutants = at(generate_mutants(mult), LOOP_CONDITION, MutationOperatorClass.ROR)
    assert [m.mutated_text for m in mutants] == ["i <= a", "i > a", "i >= a", "i == a", "i != a"]


def test_crp_yields_the_running_example(mult):
    mutants = at(generate_mutants(mult), INCREMENT + ("rhs",), MutationOperatorClass.CRP)
    assert [m.mutated_text for m in mutants] == ["2", "0", "-1"]


def test_nothing_to_mutate():
    program = parse("program id; input int a; output int res;\nres = a;\n")
    enabled = MutationOperatorClass.defaults() - {MutationOperatorClass.UOI}
    assert generate_mutants(program, enabled) == []
    # insertion applies to every expression, even a bare variable
    assert [m.mutated_text for m in generate_mutants(program)] == ["-a"]


def test_ids_are_stable_and_ordered(mult):
    mutants = generate_mutants(mult)
    assert [m.id for m in mutants[:3]] == ["mult-m001", "mult-m002", "mult-m003"]
    assert [m.id for m in generate_mutants(mult)] == [m.id for m in mutants]
    paths = [m.location for m in mutants]
    assert paths[0] == ("body", 0, "init")


def test_vrp_is_opt_in(mult):
    default = generate_mutants(mult)
    assert not any(m.operator_class == MutationOperatorClass.VRP for m in default)
    with_vrp = generate_mutants(mult, MutationOperatorClass.defaults() | {MutationOperatorClass.VRP})
    vrp = [m for m in with_vrp if m.operator_class == MutationOperatorClass.VRP]
    at_step = {m.mutated_text for m in vrp if m.location_text == "body[2].body[0].value.rhs"}
    assert at_step == {"a", "res", "i"}


@pytest.mark.parametrize("name", corpus_names())
def test_single_point_and_closure(name):
    program = load_corpus_program(name)
    mutants = generate_mutants(program)
    assert mutants
    assert len({m.program.body for m in mutants}) == len(mutants)
    for mutant in mutants:
        assert mutant.program != program
        assert get_node(mutant.program, mutant.location) == mutant.mutated_fragment
        assert replace_node(mutant.program, mutant.location, mutant.original_fragment) == program
        assert parse(pretty_print(mutant.program)) == mutant.program


def test_apply_mutation_running_example(mult):
    mutated = apply_mutation(mult, "body[2].body[1].value.rhs", MutationEdit(MutationOperatorClass.CRP, IntConst(2)))
    assert interpret(mutated, {"a": 2, "b": 1}) == {"res": 1}
    assert interpret(mult, {"a": 2, "b": 1}) == {"res": 2}
    assert get_node(mult, parse_path("body[2].body[1].value.rhs")) == IntConst(1)


def test_apply_mutation_operator_swap(mult):
    mutated = apply_mutation(mult, LOOP_CONDITION, MutationEdit(MutationOperatorClass.ROR, ">"))
    assert get_node(mutated, LOOP_CONDITION) == Binary(">", VarRef("i"), VarRef("a"))


def test_identity_is_not_a_mutation(mult):
    with pytest.raises(NotAMutationException):
        apply_mutation(mult, LOOP_CONDITION, MutationEdit(MutationOperatorClass.ROR, "<"))


def test_ill_typed_replacement(mult):
    with pytest.raises(IllTypedMutationException):
        apply_mutation(mult, LOOP_CONDITION, MutationEdit(MutationOperatorClass.COR, "and"))


@pytest.mark.parametrize("location", ["body[9]", "body[0]", "body[2].cond.lhs.rhs", "inputs[0]", "body[2]..x"])
def test_invalid_locations(mult, location):
    with pytest.raises(InvalidLocationException):
        apply_mutation(mult, location, MutationEdit(MutationOperatorClass.CRP, IntConst(5)))


def test_mutant_records(mult):
    records = mutant_records(generate_mutants(mult))
    first = records[0].model_dump()
    assert first == {
        "id": "mult-m001",
        "operator_class": "CRP",
        "location": "body[0].init",
        "line": 2,
        "original": "0",
        "mutated": "1",
    }


def test_parse_operator_list():
    assert MutationOperatorClass.parse_list("aor, ROR") == {MutationOperatorClass.AOR, MutationOperatorClass.ROR}
    with pytest.raises(ValueError):
        MutationOperatorClass.parse_list("AOR,XYZ")
