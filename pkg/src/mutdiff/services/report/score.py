from dataclasses import dataclass

from mutdiff.exceptions import PreconditionViolationException


@dataclass(frozen=True)
class MutationScore:
    value: float
    # True when every mutant is equivalent and the score is 1 by definition
    vacuous: bool = False


def compute_mutation_score(killed: int, total: int, equivalent: int) -> MutationScore:
    """Killed mutants over non-equivalent mutants.

    Args:
        killed: Mutants distinguished by at least one test
        total: All generated mutants
        equivalent: Mutants known to be equivalent

    Returns:
        The score; when total equals equivalent the score is 1.0 and flagged vacuous

    Raises:
        PreconditionViolationException: counts are negative or inconsistent
    """
    if not 0 <= equivalent <= total:
        raise PreconditionViolationException(
            f"equivalent ({equivalent}) must lie between 0 and total ({total})"
        )
    if not 0 <= killed <= total - equivalent:
        raise PreconditionViolationException(
            f"killed ({killed}) must lie between 0 and total - equivalent ({total - equivalent})"
        )
    if total == equivalent:
        return MutationScore(1.0, vacuous=True)
    return MutationScore(killed / (total - equivalent))


def mutation_score(killed: int, total: int, equivalent: int) -> float:
    return compute_mutation_score(killed, total, equivalent).value
