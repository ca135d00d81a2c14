import pytest

from conftest import small_domain
from mutdiff.exceptions import (
    DivisionByZeroException,
    DomainOverflowException,
    InvalidInputException,
    NonTerminationException,
)
from mutdiff.models.schemas.config import DomainConfig
from mutdiff.schemas.test_case import TestCase, TestOutcome, TestSuite
from mutdiff.services.lang.interpreter import classify_test, interpret, run_program
from mutdiff.services.lang.parser import parse
from mutdiff.services.lang.semantics import truncated_divmod


@pytest.mark.parametrize(
    "inputs, expected",
    [({"a": 2, "b": 3}, {"res": 6}), ({"a": 0, "b": 7}, {"res": 0}), ({"a": 1, "b": 1}, {"res": 1})],
)
def test_interpret_mult(mult, inputs, expected):
    assert interpret(mult, inputs) == expected


def test_interpret_is_deterministic(mult):
    assert interpret(mult, {"a": 5, "b": 4}) == interpret(mult, {"a": 5, "b": 4})


def test_loop_iterations_are_recorded(mult):
    result = run_program(mult, {"a": 3, "b": 2})
    assert result.loop_iterations == {4: 3}
    assert result.max_iterations == 3
    assert result.environment["i"] == 3


def test_non_termination():
    program = parse("program spin; input int a; output int res;\nint res = 0;\nwhile (a > 0) { res = 0; }\n")
    with pytest.raises(NonTerminationException):
        interpret(program, {"a": 1}, max_steps=500)


def test_overflow_is_reported_not_wrapped(mult):
    with pytest.raises(DomainOverflowException):
        interpret(mult, {"a": 4, "b": 5}, domain=small_domain())
    assert interpret(mult, {"a": 3, "b": 5}, domain=small_domain()) == {"res": 15}


def test_division_by_zero_is_distinct():
    program = parse("program d; input int a; input int b; output int res;\nres = a / b;\n")
    with pytest.raises(DivisionByZeroException):
        interpret(program, {"a": 1, "b": 0})


@pytest.mark.parametrize("lhs, rhs, quotient, remainder", [(7, 2, 3, 1), (-7, 2, -3, -1), (7, -2, -3, 1), (-7, -2, 3, -1)])
def test_division_truncates_toward_zero(lhs, rhs, quotient, remainder):
    assert truncated_divmod(lhs, rhs) == (quotient, remainder)


def test_short_circuit_guards_failures():
    program = parse(
        "program g; input int a; input int b; output bool res;\nres = b != 0 and a / b > 1;\n"
    )
    assert interpret(program, {"a": 5, "b": 0}) == {"res": False}


@pytest.mark.parametrize("inputs", [{"a": 1}, {"a": 1, "b": 2, "c": 3}, {"a": True, "b": 2}])
def test_invalid_inputs(mult, inputs):
    with pytest.raises(InvalidInputException):
        interpret(mult, inputs)


def test_out_of_domain_input(mult):
    with pytest.raises(DomainOverflowException):
        interpret(mult, {"a": 300, "b": 0})


def test_classify_test(mult):
    assert classify_test(mult, TestCase(input={"a": 1, "b": 2}, expected={"res": 2})) == TestOutcome.PASSING
    assert classify_test(mult, TestCase(input={"a": 1, "b": 2}, expected={"res": 3})) == TestOutcome.FAILING
    assert classify_test(mult, TestCase(input={"a": 3, "b": 0}, expected={})) == TestOutcome.PASSING


def test_classify_test_treats_failures_as_failing(mult):
    tc = TestCase(input={"a": 4, "b": 5}, expected={})
    assert classify_test(mult, tc, domain=small_domain()) == TestOutcome.FAILING


def test_suite_parses_expected_alias():
    suite = TestSuite.model_validate([{"input": {"a": 1, "b": 2}, "expected": {"res": 2}}])
    assert len(suite) == 1
    assert next(iter(suite)).expected_output == {"res": 2}


def test_domain_rejects_empty_range():
    with pytest.raises(ValueError):
        DomainConfig(int_min=3, int_max=3)
