from pathlib import Path
from typing import Dict, Optional

from mutdiff.constants import MUTANT_SUFFIX, SMT_SUFFIX
from mutdiff.exceptions import ExecutionException, WitnessValidationFailure
from mutdiff.models.ast import Program
from mutdiff.models.constraints import ConstraintSystem, FlagValue, Solution, SolveStatus
from mutdiff.models.mutant import Mutant
from mutdiff.models.schemas.config import DetectorConfig, FlagStrategy
from mutdiff.schemas.verdict import DetectionStats, Equivalent, NotEquivalent, Unknown, UnknownReason, Verdict, Witness
from mutdiff.services.conversion.encoder import build_joint_system
from mutdiff.services.conversion.pipeline import convert, convert_stages
from mutdiff.services.lang.interpreter import interpret
from mutdiff.services.solver.smtlib import export_smtlib
from mutdiff.services.solver.solver import SolverSession
from mutdiff.utils.deadline import Deadline
from mutdiff.utils.logger import get_logger

logger = get_logger(__name__)


class EquivalenceDetector:
    """Decides, mutant by mutant, whether a mutant of one program can be told apart from it.

    For a nesting depth nd the program and the mutant (renamed with the _M suffix) are
    converted to constraints, their inputs are tied and at least one output pair must
    differ. A solution whose loop flags are all false is a distinguishing input and is
    confirmed by running both programs. A solution with a true flag relies on an unrolling
    that was too shallow, so its inputs are blocked and the system is solved again. When no
    solution is left, nd grows until nd_max, where the mutant is reported equivalent.
    """

    def __init__(self, program: Program, cfg: Optional[DetectorConfig] = None):
        self.program = program
        self.cfg = cfg or DetectorConfig()
        self._program_systems: Dict[int, ConstraintSystem] = {}

    def program_system(self, nd: int) -> ConstraintSystem:
        if nd not in self._program_systems:
            self._program_systems[nd] = convert(self.program, nd, self.cfg.domain)
        return self._program_systems[nd]

    def joint_system(self, mutant_program: Program, nd: int) -> ConstraintSystem:
        con_p = self.program_system(nd)
        con_m = convert_stages(mutant_program, nd, self.cfg.domain, suffix=MUTANT_SUFFIX).system
        joint = build_joint_system(
            con_p,
            con_m,
            list(zip(con_p.input_vars, con_m.input_vars)),
            list(zip(con_p.output_vars, con_m.output_vars)),
        )
        if self.cfg.flag_strategy == FlagStrategy.CONSTRAIN:
            joint = joint.with_constraints(FlagValue(flag, False) for flag in joint.flag_vars)
        return joint

    def detect(self, mutant: Mutant, emit_smt: Optional[Path] = None) -> Verdict:
        if mutant.base.body != self.program.body or mutant.base.inputs != self.program.inputs:
            raise ValueError(f"mutant {mutant.id} was not generated from {self.program.name}")

        cfg = self.cfg
        deadline = Deadline(cfg.domain.solver_timeout)
        nd = cfg.nd_initial
        solver_calls = blocking_rounds = 0

        def stats() -> DetectionStats:
            wall_ms = round(deadline.elapsed * 1000, 3)
            return DetectionStats(
                solver_calls=solver_calls, blocking_rounds=blocking_rounds, nd_reached=nd, wall_ms=wall_ms
            )

        while True:
            joint = self.joint_system(mutant.program, nd)
            if emit_smt is not None:
                self._emit(joint, mutant.id, nd, emit_smt)
            session = SolverSession(joint, deadline)
            rounds_at_depth = 0

            while True:
                solver_calls += 1
                result = session.next_solution()

                if result.status == SolveStatus.TIMEOUT:
                    logger.warning(f"Mutant {mutant.id}: solver timeout at nd={nd}")
                    return Unknown(reason=UnknownReason.TIMEOUT, nd_reached=nd, stats=stats())

                if result.status == SolveStatus.UNSAT:
                    if nd >= cfg.nd_max:
                        logger.info(f"Mutant {mutant.id}: equivalent up to nd={nd}")
                        return Equivalent(nd_reached=nd, stats=stats())
                    nd += 1
                    logger.info(f"Mutant {mutant.id}: no distinguishing input, raising nd to {nd}")
                    break

                solution = result.solution
                if not any(solution[flag] for flag in joint.flag_vars):
                    witness = self.validate_witness(mutant, solution, joint)
                    logger.info(f"Mutant {mutant.id}: not equivalent, witness {witness.input}")
                    return NotEquivalent(nd_reached=nd, witness=witness, stats=stats())

                rounds_at_depth += 1
                if rounds_at_depth > cfg.max_blocking_rounds:
                    logger.warning(f"Mutant {mutant.id}: {cfg.max_blocking_rounds} blocking rounds exhausted at nd={nd}")
                    return Unknown(reason=UnknownReason.BLOCKING_ROUNDS_EXHAUSTED, nd_reached=nd, stats=stats())
                blocking_rounds += 1
                session.block(solution.project(joint.input_vars))

    def validate_witness(self, mutant: Mutant, solution: Solution, joint: ConstraintSystem) -> Witness:
        """Run both programs on the solution's inputs; outputs must differ and match the solution."""
        program = self.program
        inputs = {name: solution[var] for name, var in zip(program.input_names, joint.input_vars)}
        n_outputs = len(program.output_names)
        predicted_p = dict(zip(program.output_names, (solution[v] for v in joint.output_vars[:n_outputs])))
        predicted_m = dict(zip(program.output_names, (solution[v] for v in joint.output_vars[n_outputs:])))

        try:
            output_p = interpret(program, inputs, self.cfg.max_steps, self.cfg.domain)
            output_m = interpret(mutant.program, inputs, self.cfg.max_steps, self.cfg.domain)
        except ExecutionException as e:
            raise WitnessValidationFailure(f"witness {inputs} does not execute: {e}", mutant.id) from e

        if output_p == output_m:
            raise WitnessValidationFailure(f"witness {inputs} yields equal outputs {output_p}", mutant.id)
        if output_p != predicted_p or output_m != predicted_m:
            raise WitnessValidationFailure(
                f"witness {inputs}: executions give {output_p} / {output_m}, "
                f"constraints predicted {predicted_p} / {predicted_m}",
                mutant.id,
            )
        return Witness(input=inputs, output_p=output_p, output_m=output_m)

    @staticmethod
    def _emit(joint: ConstraintSystem, mutant_id: str, nd: int, directory: Path) -> None:
        directory.mkdir(parents=True, exist_ok=True)
        (directory / f"{mutant_id}.nd{nd}{SMT_SUFFIX}").write_text(export_smtlib(joint))


def detect(
    program: Program, mutant: Mutant, cfg: Optional[DetectorConfig] = None, emit_smt: Optional[Path] = None
) -> Verdict:
    return EquivalenceDetector(program, cfg).detect(mutant, emit_smt)
