from dataclasses import dataclass, field
from typing import Dict, Optional

from mutdiff.core.config import settings
from mutdiff.exceptions import ExecutionException, InvalidInputException, NonTerminationException
from mutdiff.models.ast import Assign, Decl, If, Program, Statement, VarType, While
from mutdiff.models.schemas.config import DomainConfig
from mutdiff.schemas.test_case import TestCase, TestOutcome
from mutdiff.services.lang.semantics import VariableEnvironment, evaluate_expression, in_domain
from mutdiff.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class ExecutionResult:
    outputs: VariableEnvironment
    environment: VariableEnvironment
    # Largest number of iterations performed by one entry into each loop, keyed by loop line
    loop_iterations: Dict[int, int] = field(default_factory=dict)
    steps: int = 0

    @property
    def max_iterations(self) -> int:
        return max(self.loop_iterations.values(), default=0)


class Interpreter:
    """Tree-walking interpreter. Every statement execution and every loop test costs one step."""

    def __init__(self, domain: DomainConfig, max_steps: int):
        self.domain = domain
        self.max_steps = max_steps
        self.steps = 0
        self.loop_iterations: Dict[int, int] = {}

    def run(self, program: Program, inputs: VariableEnvironment) -> ExecutionResult:
        env = dict(validate_inputs(program, inputs, self.domain))
        self._execute_block(program.body, env)
        outputs = {name: env[name] for name in program.output_names}
        return ExecutionResult(outputs, env, dict(self.loop_iterations), self.steps)

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.max_steps:
            raise NonTerminationException(self.max_steps)

    def _execute_block(self, body, env: VariableEnvironment) -> None:
        for stmt in body:
            self._execute(stmt, env)

    def _execute(self, stmt: Statement, env: VariableEnvironment) -> None:
        self._tick()
        if isinstance(stmt, Decl):
            env[stmt.name] = evaluate_expression(stmt.init, env, self.domain)
        elif isinstance(stmt, Assign):
            env[stmt.target] = evaluate_expression(stmt.value, env, self.domain)
        elif isinstance(stmt, If):
            if evaluate_expression(stmt.cond, env, self.domain):
                self._execute_block(stmt.then_body, env)
            else:
                self._execute_block(stmt.else_body, env)
        elif isinstance(stmt, While):
            iterations = 0
            while evaluate_expression(stmt.cond, env, self.domain):
                iterations += 1
                self._execute_block(stmt.body, env)
                self._tick()
            self.loop_iterations[stmt.line] = max(self.loop_iterations.get(stmt.line, 0), iterations)
        else:
            raise TypeError(f"not a statement: {stmt!r}")


def validate_inputs(program: Program, inputs: VariableEnvironment, domain: DomainConfig) -> VariableEnvironment:
    expected = set(program.input_names)
    if set(inputs) != expected:
        raise InvalidInputException(
            f"input must bind exactly {sorted(expected)}, got {sorted(inputs)}"
        )
    for decl in program.inputs:
        value = inputs[decl.name]
        if decl.var_type == VarType.BOOL:
            if not isinstance(value, bool):
                raise InvalidInputException(f"input '{decl.name}' must be a bool, got {value!r}")
        else:
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInputException(f"input '{decl.name}' must be an int, got {value!r}")
            in_domain(value, domain, f"input '{decl.name}'")
    return {decl.name: inputs[decl.name] for decl in program.inputs}


def run_program(
    program: Program,
    inputs: VariableEnvironment,
    max_steps: Optional[int] = None,
    domain: Optional[DomainConfig] = None,
) -> ExecutionResult:
    interpreter = Interpreter(domain or DomainConfig(), max_steps or settings.MAX_STEPS)
    return interpreter.run(program, inputs)


def interpret(
    program: Program,
    inputs: VariableEnvironment,
    max_steps: Optional[int] = None,
    domain: Optional[DomainConfig] = None,
) -> VariableEnvironment:
    """Execute a program and return its output environment.

    Raises NonTerminationException, DomainOverflowException or DivisionByZeroException when
    the run does not produce outputs.
    """
    return run_program(program, inputs, max_steps, domain).outputs


def classify_test(
    program: Program,
    test_case: TestCase,
    max_steps: Optional[int] = None,
    domain: Optional[DomainConfig] = None,
) -> TestOutcome:
    try:
        outputs = interpret(program, dict(test_case.input), max_steps, domain)
    except ExecutionException as e:
        logger.debug(f"Test case fails on {program.name}: {e}")
        return TestOutcome.FAILING

    for name, expected in test_case.expected_output.items():
        if name not in outputs or outputs[name] != expected or type(outputs[name]) is not type(expected):
            return TestOutcome.FAILING
    return TestOutcome.PASSING
