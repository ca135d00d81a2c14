from dataclasses import dataclass, field
from pathlib import Path
from typing import AbstractSet, List, Optional, Sequence

from mutdiff.constants import EXIT_OK, EXIT_PARSE_ERROR, EXIT_WITNESS_FAILURE
from mutdiff.core.config import settings
from mutdiff.exceptions import MutDiffException, WitnessValidationFailure
from mutdiff.models.ast import Program
from mutdiff.models.mutant import Mutant, MutationOperatorClass
from mutdiff.models.schemas.config import DetectorConfig
from mutdiff.schemas.report import (
    CheckReport,
    Contradiction,
    ContradictionKind,
    FileError,
    MutantReport,
    RunReport,
    count_verdicts,
)
from mutdiff.schemas.test_case import TestCase, TestSuite
from mutdiff.schemas.verdict import Equivalent, Unknown, Verdict
from mutdiff.services.detection.batch import batch_detect
from mutdiff.services.lang.parser import parse, read_source
from mutdiff.services.metrics import MetricsService
from mutdiff.services.mutation.engine import generate_mutants
from mutdiff.services.report.score import compute_mutation_score
from mutdiff.services.report.suite import applicable_tests, augment_suite, evaluate_kill
from mutdiff.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class PipelineResult:
    report: CheckReport
    exit_code: int
    augmented_suite: TestSuite = field(default_factory=lambda: TestSuite([]))


def count_loc(source_text: str) -> int:
    """Non-blank lines that are not line comments."""
    return sum(
        1 for line in source_text.splitlines() if line.strip() and not line.strip().startswith("//")
    )


def strip_timings(verdict: Verdict) -> Verdict:
    return verdict.model_copy(update={"stats": verdict.stats.model_copy(update={"wall_ms": None})})


def config_echo(
    cfg: DetectorConfig,
    ops: AbstractSet[MutationOperatorClass],
    jobs: int,
    suite_path: Optional[Path],
) -> dict:
    echo = cfg.model_dump(mode="json")
    echo["ops"] = [op.value for op in MutationOperatorClass if op in ops]
    echo["jobs"] = jobs
    echo["suite"] = str(suite_path) if suite_path is not None else None
    return echo


class ProgramRun:
    """Mutation, detection and scoring for one program file."""

    def __init__(
        self,
        path: Path,
        source_text: str,
        program: Program,
        cfg: DetectorConfig,
        suite: Optional[TestSuite],
        metrics: Optional[MetricsService] = None,
    ):
        self.path = path
        self.source_text = source_text
        self.program = program
        self.cfg = cfg
        self.suite = suite
        self.metrics = metrics
        self.augmented_tests: List[TestCase] = []
        self.witness_failures = 0

    def run(
        self,
        ops: AbstractSet[MutationOperatorClass],
        jobs: int = 1,
        emit_smt: Optional[Path] = None,
        timings: bool = True,
    ) -> RunReport:
        program, cfg = self.program, self.cfg
        mutants = generate_mutants(program, ops)
        results = batch_detect(program, mutants, cfg, jobs, emit_smt)
        verdicts = [verdict if timings else strip_timings(verdict) for _, verdict in results]
        if self.metrics is not None:
            self.metrics.track_mutants(program.name, len(mutants))
            for verdict in verdicts:
                self.metrics.track_verdict(program.name, verdict)

        self.witness_failures = sum(
            isinstance(v, Unknown) and v.error_type == WitnessValidationFailure.__name__ for v in verdicts
        )
        counts = count_verdicts(verdicts)
        non_equivalent = [
            (mutant, verdict) for mutant, verdict in zip(mutants, verdicts) if not isinstance(verdict, Equivalent)
        ]

        tests = applicable_tests(program, self.suite) if self.suite is not None else []
        killed_flags: List[Optional[bool]] = [None] * len(mutants)
        contradictions: List[Contradiction] = []
        killed = None
        if self.suite is not None:
            killed = 0
            for i, (mutant, verdict) in enumerate(zip(mutants, verdicts)):
                kill = evaluate_kill(program, mutant.program, tests, cfg)
                killed_flags[i] = kill.killed
                if not kill.killed:
                    continue
                if isinstance(verdict, Equivalent):
                    # failing runs are outside an equivalence claim; only differing outputs contradict it
                    if kill.crashed:
                        kill = evaluate_kill(program, mutant.program, tests, cfg, crash_kills=False)
                    if kill.killed:
                        contradictions.append(
                            self._contradiction(mutant, verdict, kill.test_index, kill.iterations)
                        )
                else:
                    killed += 1

        self.augmented_tests = list(augment_suite(tests, verdicts))
        augmented_killed = sum(
            evaluate_kill(program, mutant.program, self.augmented_tests, cfg).killed for mutant, _ in non_equivalent
        )

        total, equivalent = len(mutants), counts["det_eqmut"]
        score = compute_mutation_score(killed, total, equivalent) if killed is not None else None
        augmented = compute_mutation_score(augmented_killed, total, equivalent)
        report = RunReport(
            program=program.name,
            path=str(self.path),
            loc=count_loc(self.source_text),
            no_mut=total,
            **counts,
            equivalent_fraction=equivalent / total if total else 0.0,
            killed=killed,
            score=score.value if score is not None else None,
            score_vacuous=score.vacuous if score is not None else False,
            augmented_killed=augmented_killed,
            augmented_score=augmented.value,
            augmented_score_vacuous=augmented.vacuous,
            contradictions=contradictions,
            mutants=[
                MutantReport.from_verdict(mutant, verdict, killed_flag)
                for mutant, verdict, killed_flag in zip(mutants, verdicts, killed_flags)
            ],
        )
        logger.info(
            f"{program.name}: {report.no_mut} mutants, {report.det_eqmut} equivalent, "
            f"{report.not_eq} not equivalent, {report.unknown} unknown"
        )
        return report

    @staticmethod
    def _contradiction(mutant: Mutant, verdict: Equivalent, test_index: int, iterations: int) -> Contradiction:
        if iterations <= verdict.nd_reached:
            kind = ContradictionKind.ENCODER_BUG
            logger.warning(
                f"Mutant {mutant.id} is reported equivalent up to nd={verdict.nd_reached} "
                f"but test {test_index} kills it within {iterations} iterations"
            )
        else:
            kind = ContradictionKind.BEYOND_BOUND
            logger.warning(
                f"Mutant {mutant.id}: test {test_index} kills it after {iterations} iterations, "
                f"beyond nd={verdict.nd_reached}"
            )
        return Contradiction(
            mutant_id=mutant.id,
            kind=kind,
            test_index=test_index,
            iterations=iterations,
            nd_reached=verdict.nd_reached,
        )


def run_pipeline(
    paths: Sequence[Path],
    cfg: Optional[DetectorConfig] = None,
    suite: Optional[TestSuite] = None,
    ops: Optional[AbstractSet[MutationOperatorClass]] = None,
    jobs: int = 1,
    emit_smt: Optional[Path] = None,
    timings: bool = True,
    metrics: Optional[MetricsService] = None,
    suite_path: Optional[Path] = None,
) -> PipelineResult:
    """Generate mutants, detect equivalence and score every program file.

    Returns:
        The report and the exit code: 0 on success, 1 when a file cannot be read or parsed,
        2 on a witness validation failure or a suite kill that contradicts an equivalent verdict
    """
    cfg = cfg or DetectorConfig()
    ops = MutationOperatorClass.defaults() if ops is None else ops
    report = CheckReport(
        tool=settings.PROJECT_NAME, version=settings.VERSION, config=config_echo(cfg, ops, jobs, suite_path)
    )
    augmented: List[TestCase] = []
    exit_code = EXIT_OK

    for path in paths:
        path = Path(path)
        try:
            source_text = read_source(path)
            program = parse(source_text)
        except (OSError, MutDiffException) as e:
            logger.error(f"Cannot load {path}: {e}")
            report.errors.append(FileError(path=str(path), error_type=type(e).__name__, message=str(e)))
            exit_code = max(exit_code, EXIT_PARSE_ERROR)
            continue

        program_run = ProgramRun(path, source_text, program, cfg, suite, metrics)
        run_report = program_run.run(ops, jobs, emit_smt, timings)
        report.programs.append(run_report)
        augmented += [test for test in program_run.augmented_tests if test not in augmented]

        if program_run.witness_failures or any(
            c.kind == ContradictionKind.ENCODER_BUG for c in run_report.contradictions
        ):
            exit_code = EXIT_WITNESS_FAILURE

    return PipelineResult(report, exit_code, TestSuite(augmented))
