import pytest

from conftest import load_corpus_program, manual_mutant, mult_variant, small_config, small_domain
from mutdiff.exceptions import WitnessValidationFailure
from mutdiff.models.mutant import MutationOperatorClass
from mutdiff.models.schemas.config import DetectorConfig, FlagStrategy
from mutdiff.schemas.verdict import Equivalent, NotEquivalent, Unknown, UnknownReason
from mutdiff.services.detection.detector import EquivalenceDetector, detect
from mutdiff.services.lang.interpreter import interpret
from mutdiff.services.lang.parser import parse
from mutdiff.services.mutation import generate_mutants

INCREMENT = ("body", 2, "body", 1, "value")
LOOP_CONDITION = ("body", 2, "cond")
RES_INIT = ("body", 1, "init")


@pytest.fixture
def step_two(mult):
    return manual_mutant(mult, mult_variant("i = i + 1", "i = i + 2"), INCREMENT, MutationOperatorClass.CRP)


def test_increment_by_two_is_distinguished(mult, step_two, cfg):
    verdict = detect(mult, step_two, cfg)
    assert isinstance(verdict, NotEquivalent)
    assert verdict.nd_reached == 2
    assert verdict.witness.input == {"a": 2, "b": 1}
    assert verdict.witness.output_p == {"res": 2}
    assert verdict.witness.output_m == {"res": 1}
    assert verdict.stats.solver_calls >= 1
    assert verdict.stats.wall_ms is not None and verdict.stats.wall_ms >= 0


def test_flipped_operands_are_equivalent(mult, cfg):
    mutant = manual_mutant(mult, mult_variant("i < a", "a > i"), LOOP_CONDITION)
    verdict = detect(mult, mutant, cfg)
    assert isinstance(verdict, Equivalent)
    assert verdict.nd_reached == 5
    assert verdict.stats.nd_reached == 5


def test_constant_change_differs_everywhere(cfg):
    program = parse("program p; input int a; output int res;\nres = a + 0;\n")
    mutated = parse("program p; input int a; output int res;\nres = a + 1;\n")
    mutant = manual_mutant(program, mutated, ("body", 0, "value", "rhs"), MutationOperatorClass.CRP)
    verdict = detect(program, mutant, cfg)
    assert isinstance(verdict, NotEquivalent)
    assert verdict.witness.output_m["res"] - verdict.witness.output_p["res"] == 1


def test_shallow_unrolling_can_miss_a_witness(mult, step_two):
    cfg = DetectorConfig(nd_initial=1, nd_max=1, domain=small_domain())
    verdict = detect(mult, step_two, cfg)
    assert isinstance(verdict, Equivalent)
    assert verdict.nd_reached == 1


def test_flagged_solutions_are_blocked_until_nd_grows(mult, cfg):
    mutant = manual_mutant(mult, mult_variant("int res = 0", "int res = a / 3"), RES_INIT, MutationOperatorClass.CRP)
    verdict = detect(mult, mutant, cfg)
    assert isinstance(verdict, NotEquivalent)
    assert verdict.nd_reached == 3
    assert verdict.witness.input == {"a": 3, "b": 0}
    assert verdict.stats.blocking_rounds > 0


def test_blocking_rounds_are_bounded(mult):
    mutant = manual_mutant(mult, mult_variant("int res = 0", "int res = a / 3"), RES_INIT, MutationOperatorClass.CRP)
    cfg = small_config(nd_initial=2, nd_max=2, max_blocking_rounds=1)
    verdict = detect(mult, mutant, cfg)
    assert isinstance(verdict, Unknown)
    assert verdict.reason == UnknownReason.BLOCKING_ROUNDS_EXHAUSTED
    assert verdict.stats.blocking_rounds == 1


def test_timeout_is_unknown(mult, step_two):
    cfg = DetectorConfig(domain=small_domain(timeout=1e-9))
    verdict = detect(mult, step_two, cfg)
    assert isinstance(verdict, Unknown)
    assert verdict.reason == UnknownReason.TIMEOUT


def test_constrained_flags_give_the_same_verdicts(mult):
    blocking = EquivalenceDetector(mult, small_config())
    constrained = EquivalenceDetector(mult, small_config(flag_strategy=FlagStrategy.CONSTRAIN))
    for mutant in generate_mutants(mult)[:10]:
        first, second = blocking.detect(mutant), constrained.detect(mutant)
        assert first.kind == second.kind, mutant.id
        if isinstance(first, NotEquivalent):
            assert first.witness == second.witness


def test_witnesses_distinguish_by_execution():
    program = load_corpus_program("abs_diff")
    detector = EquivalenceDetector(program, small_config())
    for mutant in generate_mutants(program):
        verdict = detector.detect(mutant)
        if isinstance(verdict, NotEquivalent):
            inputs = verdict.witness.input
            assert interpret(program, inputs, domain=small_domain()) != interpret(
                mutant.program, inputs, domain=small_domain()
            )


def test_emit_smt_writes_one_file_per_depth(mult, cfg, tmp_path):
    mutant = manual_mutant(mult, mult_variant("i < a", "a > i"), LOOP_CONDITION)
    detect(mult, mutant, cfg, emit_smt=tmp_path)
    names = sorted(path.name for path in tmp_path.iterdir())
    assert names == [f"manual-m001.nd{nd}.smt2" for nd in (2, 3, 4, 5)]
    assert "(check-sat)" in (tmp_path / "manual-m001.nd2.smt2").read_text()


def test_mutant_of_another_program_is_rejected(mult, cfg):
    other = load_corpus_program("abs_diff")
    mutant = generate_mutants(other)[0]
    with pytest.raises(ValueError):
        detect(mult, mutant, cfg)


def test_refuted_witness_raises(mult, step_two, cfg, monkeypatch):
    monkeypatch.setattr(
        "mutdiff.services.detection.detector.interpret", lambda program, inputs, *args: {"res": 0}
    )
    with pytest.raises(WitnessValidationFailure):
        detect(mult, step_two, cfg)
