import pytest

from mutdiff.exceptions import PreconditionViolationException
from mutdiff.services.report.score import compute_mutation_score, mutation_score


@pytest.mark.parametrize(
    "killed, total, equivalent, expected",
    [(90, 100, 10, 1.0), (0, 5, 0, 0.0), (3, 10, 4, 0.5), (1, 4, 0, 0.25)],
)
def test_mutation_score(killed, total, equivalent, expected):
    assert mutation_score(killed, total, equivalent) == pytest.approx(expected)


def test_all_equivalent_is_vacuously_perfect():
    score = compute_mutation_score(0, 3, 3)
    assert score.value == 1.0
    assert score.vacuous


def test_empty_program_is_vacuous():
    assert compute_mutation_score(0, 0, 0).vacuous


@pytest.mark.parametrize(
    "killed, total, equivalent",
    [(0, 5, 6), (0, 5, -1), (-1, 5, 0), (5, 5, 1), (0, -1, 0)],
)
def test_inconsistent_counts_are_rejected(killed, total, equivalent):
    with pytest.raises(PreconditionViolationException):
        mutation_score(killed, total, equivalent)
