from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional

import orjson
from pydantic import ValidationError

from mutdiff.exceptions import ExecutionException, SuiteFormatException
from mutdiff.models.ast import Program
from mutdiff.models.schemas.config import DetectorConfig
from mutdiff.schemas.test_case import TestCase, TestSuite
from mutdiff.schemas.verdict import NotEquivalent, Verdict, Witness
from mutdiff.services.lang.interpreter import run_program
from mutdiff.utils.logger import get_logger
from mutdiff.utils.serialization import dumps

logger = get_logger(__name__)


@dataclass(frozen=True)
class KillResult:
    killed: bool
    test_index: Optional[int] = None
    # Most iterations any loop needed in either execution of the killing test
    iterations: Optional[int] = None
    # The mutant failed to complete rather than producing different outputs
    crashed: bool = False


def load_suite(path: Path) -> TestSuite:
    try:
        return TestSuite.model_validate(orjson.loads(Path(path).read_bytes()))
    except OSError as e:
        raise SuiteFormatException(f"cannot read test suite {path}: {e}") from e
    except (orjson.JSONDecodeError, ValidationError) as e:
        raise SuiteFormatException(f"malformed test suite {path}: {e}") from e


def dump_suite(suite: TestSuite) -> bytes:
    return dumps(suite)


def applicable_tests(program: Program, suite: TestSuite) -> List[TestCase]:
    """Tests whose input binds exactly the program's inputs; the rest belong to other programs."""
    names = set(program.input_names)
    tests = [test for test in suite if set(test.input) == names]
    skipped = len(suite) - len(tests)
    if skipped:
        logger.warning(f"{skipped} of {len(suite)} tests do not match the inputs of {program.name}")
    return tests


def evaluate_kill(
    program: Program,
    mutant_program: Program,
    tests: Iterable[TestCase],
    cfg: DetectorConfig,
    crash_kills: bool = True,
) -> KillResult:
    """A mutant is killed by the first test on which the program completes and the mutant either
    fails or produces different outputs. With crash_kills off only differing outputs count."""
    for index, test in enumerate(tests):
        try:
            result_p = run_program(program, dict(test.input), cfg.max_steps, cfg.domain)
        except ExecutionException:
            continue
        try:
            result_m = run_program(mutant_program, dict(test.input), cfg.max_steps, cfg.domain)
        except ExecutionException as e:
            if crash_kills:
                logger.debug(f"Mutant fails on test {index}: {e}")
                return KillResult(True, index, result_p.max_iterations, crashed=True)
            continue
        if result_p.outputs != result_m.outputs:
            return KillResult(True, index, max(result_p.max_iterations, result_m.max_iterations))
    return KillResult(False)


def witness_test_case(witness: Witness) -> TestCase:
    return TestCase(input=dict(witness.input), expected_output=dict(witness.output_p))


def augment_suite(tests: Iterable[TestCase], verdicts: Iterable[Verdict]) -> TestSuite:
    """The tests followed by one test per NotEquivalent witness, expected outputs taken from the program."""
    augmented = list(tests)
    for verdict in verdicts:
        if isinstance(verdict, NotEquivalent):
            test = witness_test_case(verdict.witness)
            if test not in augmented:
                augmented.append(test)
    return TestSuite(augmented)
