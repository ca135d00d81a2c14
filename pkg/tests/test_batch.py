import pytest

from conftest import load_corpus_program, manual_mutant, small_config
from mutdiff.models.mutant import MutationOperatorClass
from mutdiff.models.schemas.config import DetectorConfig, DomainConfig
from mutdiff.schemas.verdict import NotEquivalent, Unknown, UnknownReason
from mutdiff.services.detection.batch import batch_detect
from mutdiff.services.detection.detector import detect
from mutdiff.services.lang.parser import parse
from mutdiff.services.mutation import generate_mutants

HEADER = "program quad; input int a; input int b; input int c; input int d; output int res;\n"


def comparable(verdict):
    return verdict.model_dump(exclude={"stats"})


def test_empty_batch(mult):
    assert batch_detect(mult, []) == []


@pytest.mark.parametrize("jobs", [1, 2])
def test_batch_preserves_order_and_matches_detect(mult, cfg, jobs):
    mutants = generate_mutants(mult)[:6]
    results = batch_detect(mult, mutants, cfg, jobs=jobs)
    assert [mutant_id for mutant_id, _ in results] == [m.id for m in mutants]
    for mutant, (_, verdict) in zip(mutants, results):
        assert comparable(verdict) == comparable(detect(mult, mutant, cfg))


@pytest.mark.parametrize("jobs", [1, 2])
def test_errors_are_recorded_per_mutant(mult, cfg, jobs):
    foreign = generate_mutants(load_corpus_program("abs_diff"))[0]
    mutants = [generate_mutants(mult)[0], foreign, generate_mutants(mult)[1]]
    results = batch_detect(mult, mutants, cfg, jobs=jobs)
    failed = results[1][1]
    assert isinstance(failed, Unknown)
    assert failed.reason == UnknownReason.ERROR
    assert failed.error_type == "ValueError"
    assert all(verdict.kind != "unknown" for _, verdict in (results[0], results[2]))


def test_every_witness_is_validated(mult, cfg):
    enabled = {MutationOperatorClass.AOR, MutationOperatorClass.ROR, MutationOperatorClass.CRP}
    for _, verdict in batch_detect(mult, generate_mutants(mult, enabled), cfg):
        assert not (isinstance(verdict, Unknown) and verdict.reason == UnknownReason.ERROR)
        if isinstance(verdict, NotEquivalent):
            assert verdict.witness.output_p != verdict.witness.output_m


@pytest.mark.slow
def test_timeout_is_isolated():
    program = parse(HEADER + "int res = a * b - c * d;\n")
    # equivalent, and interval reasoning cannot prove it, so the search runs into the deadline
    rewritten = manual_mutant(
        program, parse(HEADER + "int res = a * b + (-c) * d;\n"), ("body", 0, "init"), MutationOperatorClass.AOR
    )
    swapped = next(
        m
        for m in generate_mutants(program, {MutationOperatorClass.AOR})
        if m.location == ("body", 0, "init") and m.mutated_fragment.op == "+"
    )
    cfg = DetectorConfig(domain=DomainConfig(int_min=-128, int_max=127, solver_timeout=1.0))

    results = dict(batch_detect(program, [rewritten, swapped], cfg))

    timed_out = results[rewritten.id]
    assert isinstance(timed_out, Unknown)
    assert timed_out.reason == UnknownReason.TIMEOUT
    assert timed_out.stats.wall_ms < 1500
    assert isinstance(results[swapped.id], NotEquivalent)
    assert results[swapped.id].stats.wall_ms < 1500
