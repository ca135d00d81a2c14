import shutil

import orjson
import pytest

from conftest import CORPUS_DIR, small_config
from mutdiff.constants import EXIT_OK, EXIT_PARSE_ERROR
from mutdiff.exceptions import SuiteFormatException
from mutdiff.models.mutant import MutationOperatorClass
from mutdiff.schemas.report import ContradictionKind
from mutdiff.schemas.test_case import TestCase, TestOutcome, TestSuite
from mutdiff.schemas.verdict import DetectionStats, Equivalent
from mutdiff.services.lang.interpreter import classify_test
from mutdiff.services.lang.parser import parse
from mutdiff.services.metrics import MetricsService
from mutdiff.services.mutation import generate_mutants
from mutdiff.services.report.pipeline import ProgramRun, count_loc, run_pipeline
from mutdiff.services.report.suite import applicable_tests, dump_suite, evaluate_kill, load_suite
from mutdiff.services.report.table import COLUMNS, render_table
from mutdiff.utils.serialization import dumps

OPS = {MutationOperatorClass.AOR, MutationOperatorClass.ROR, MutationOperatorClass.CRP}


@pytest.fixture
def abs_diff_path(tmp_path):
    return shutil.copy(CORPUS_DIR / "abs_diff.mlang", tmp_path / "abs_diff.mlang")


@pytest.fixture
def mult_path(tmp_path):
    return shutil.copy(CORPUS_DIR / "mult.mlang", tmp_path / "mult.mlang")


def suite_of(*tests) -> TestSuite:
    return TestSuite([TestCase(input=inputs, expected_output=expected) for inputs, expected in tests])


def test_count_loc_skips_blank_and_comment_lines():
    assert count_loc("// header\nprogram p;\n\n  // note\nres = 1;\n") == 2


def test_report_counts_add_up(abs_diff_path):
    result = run_pipeline([abs_diff_path], small_config(), ops=OPS)
    assert result.exit_code == EXIT_OK
    (run,) = result.report.programs
    assert run.no_mut == run.det_eqmut + run.not_eq + run.unknown == len(run.mutants)
    assert run.loc == count_loc(abs_diff_path.read_text())
    assert run.killed is None and run.score is None
    assert result.report.config["ops"] == ["AOR", "ROR", "CRP"]


def test_augmented_suite_kills_every_distinguished_mutant(abs_diff_path):
    result = run_pipeline([abs_diff_path], small_config(), ops=OPS)
    (run,) = result.report.programs
    assert run.unknown == 0
    assert run.augmented_killed == run.not_eq
    assert run.augmented_score == 1.0
    assert len(result.augmented_suite) <= run.not_eq
    witnesses = [m.witness.input for m in run.mutants if m.witness is not None]
    assert all(test.input in witnesses for test in result.augmented_suite)


def test_suite_score_is_recomputed_from_kills(abs_diff_path):
    suite = suite_of(({"a": 5, "b": 2}, {"res": 3}), ({"a": 1, "b": 4}, {"res": 3}))
    result = run_pipeline([abs_diff_path], small_config(), suite=suite, ops=OPS)
    (run,) = result.report.programs
    killed = sum(1 for m in run.mutants if m.killed and m.verdict != "equivalent")
    assert run.killed == killed
    assert run.score == pytest.approx(killed / (run.no_mut - run.det_eqmut))
    assert all(m.killed is not None for m in run.mutants)


def test_report_is_deterministic_without_timings(abs_diff_path):
    first = run_pipeline([abs_diff_path], small_config(), ops=OPS, timings=False)
    second = run_pipeline([abs_diff_path], small_config(), ops=OPS, timings=False)
    assert dumps(first.report) == dumps(second.report)
    assert all(m.wall_ms is None for m in first.report.programs[0].mutants)


def test_unreadable_file_is_recorded(abs_diff_path, tmp_path):
    broken = tmp_path / "broken.mlang"
    broken.write_text("program broken; input int a; output int res;\nres = a +;\n")
    result = run_pipeline([broken, abs_diff_path, tmp_path / "missing.mlang"], small_config(), ops=OPS)
    assert result.exit_code == EXIT_PARSE_ERROR
    assert [run.program for run in result.report.programs] == ["abs_diff"]
    assert [e.error_type for e in result.report.errors] == ["SourceSyntaxException", "FileNotFoundError"]
    assert "broken.mlang" in render_table(result.report)


def test_emit_smt_writes_files(abs_diff_path, tmp_path):
    out = tmp_path / "smt"
    run_pipeline([abs_diff_path], small_config(), ops={MutationOperatorClass.ROR}, emit_smt=out)
    files = list(out.glob("*.smt2"))
    assert files
    assert all(path.name.startswith("abs_diff-m") for path in files)


def test_kill_beyond_the_bound_is_not_an_encoder_bug(mult_path):
    suite = suite_of(({"a": 2, "b": 1}, {"res": 2}))
    cfg = small_config(nd_initial=1, nd_max=1)
    result = run_pipeline([mult_path], cfg, suite=suite, ops={MutationOperatorClass.CRP})
    (run,) = result.report.programs
    step_two = next(m for m in run.mutants if m.location == "body[2].body[1].value.rhs" and m.mutated == "2")
    assert step_two.verdict == "equivalent"
    contradicted = {c.mutant_id: c for c in run.contradictions}
    assert contradicted[step_two.mutant_id].kind == ContradictionKind.BEYOND_BOUND
    assert contradicted[step_two.mutant_id].iterations == 2
    assert result.exit_code == EXIT_OK


def test_kill_within_the_bound_is_an_encoder_bug(mult):
    mutant = generate_mutants(mult)[0]
    verdict = Equivalent(nd_reached=3, stats=DetectionStats(nd_reached=3))
    contradiction = ProgramRun._contradiction(mutant, verdict, test_index=0, iterations=2)
    assert contradiction.kind == ContradictionKind.ENCODER_BUG


def test_metrics_are_collected(abs_diff_path, tmp_path):
    metrics = MetricsService()
    result = run_pipeline([abs_diff_path], small_config(), ops=OPS, metrics=metrics)
    text = metrics.get_metrics().decode()
    assert "mutdiff_verdicts_total" in text
    assert f"mutdiff_mutants_total{{program=\"abs_diff\"}} {float(result.report.programs[0].no_mut)}" in text
    metrics.write(tmp_path / "run.prom")
    assert "mutdiff_mutants_total" in (tmp_path / "run.prom").read_text()


def test_table_has_one_row_per_program_and_totals(abs_diff_path, mult_path):
    result = run_pipeline([abs_diff_path, mult_path], small_config(), ops={MutationOperatorClass.ROR})
    lines = render_table(result.report).splitlines()
    assert lines[0].split() == list(COLUMNS)
    assert [line.split()[0] for line in lines[2:]] == ["abs_diff", "mult", "Total"]


def test_suite_round_trip_and_format_errors(tmp_path, mult):
    suite = suite_of(({"a": 2, "b": 3}, {"res": 6}), ({"x": 1}, {}))
    path = tmp_path / "suite.json"
    path.write_bytes(dump_suite(suite))
    assert orjson.loads(path.read_bytes())[0] == {"input": {"a": 2, "b": 3}, "expected": {"res": 6}}
    assert load_suite(path) == suite
    assert len(applicable_tests(mult, suite)) == 1

    path.write_text('[{"input": {"a": "two"}}]')
    with pytest.raises(SuiteFormatException):
        load_suite(path)
    with pytest.raises(SuiteFormatException):
        load_suite(tmp_path / "absent.json")


def test_failing_mutant_is_killed_when_the_original_passes():
    header = "program sum; input int a; input int b; output int res;\n"
    program, mutant = parse(header + "int res = a + b;\n"), parse(header + "int res = a / b;\n")
    test = TestCase(input={"a": 1, "b": 0}, expected_output={"res": 1})
    cfg = small_config()
    assert classify_test(program, test, domain=cfg.domain) == TestOutcome.PASSING
    assert classify_test(mutant, test, domain=cfg.domain) == TestOutcome.FAILING

    kill = evaluate_kill(program, mutant, [test], cfg)
    assert kill.killed and kill.crashed
    assert kill.test_index == 0
    assert not evaluate_kill(program, mutant, [test], cfg, crash_kills=False).killed
    # nothing is killed when the original itself fails
    assert not evaluate_kill(mutant, program, [test], cfg).killed


def test_failing_mutant_counts_toward_the_score(tmp_path):
    path = tmp_path / "sum.mlang"
    path.write_text("program sum; input int a; input int b; output int res;\nint res = a + b;\n")
    suite = suite_of(({"a": 1, "b": 0}, {"res": 1}))
    result = run_pipeline([path], small_config(), suite=suite, ops={MutationOperatorClass.AOR})
    (run,) = result.report.programs
    division = next(m for m in run.mutants if m.mutated == "a / b")
    assert division.killed
    assert run.killed == sum(1 for m in run.mutants if m.killed and m.verdict != "equivalent")
    assert all(c.mutant_id != division.mutant_id for c in run.contradictions)
