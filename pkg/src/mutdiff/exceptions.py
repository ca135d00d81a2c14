from typing import Any, Optional


class MutDiffException(Exception):
    """Base class for every error raised by mutdiff."""


# Frontend


class SourceSyntaxException(MutDiffException):
    """Exception raised when mini-language source text cannot be tokenized or parsed."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class TypeMismatchException(MutDiffException):
    """Exception raised when an expression or statement is ill-typed."""

    def __init__(self, location: Any, expected: str, found: str):
        super().__init__(f"{location}: expected {expected}, found {found}")
        self.location = location
        self.expected = expected
        self.found = found


class UndeclaredVariableException(MutDiffException):
    """Exception raised when a variable is referenced or assigned without a declaration."""

    def __init__(self, name: str, location: Any = None):
        super().__init__(f"{location}: undeclared variable '{name}'")
        self.name = name
        self.location = location


class UseBeforeDefinitionException(MutDiffException):
    """Exception raised when a variable may be read before it has been assigned."""

    def __init__(self, name: str, location: Any = None):
        super().__init__(f"{location}: variable '{name}' may be used before it is assigned")
        self.name = name
        self.location = location


class RedeclaredVariableException(MutDiffException):
    """Exception raised when a variable is declared twice."""

    def __init__(self, name: str, location: Any = None):
        super().__init__(f"{location}: variable '{name}' is already declared")
        self.name = name
        self.location = location


class UnsupportedConstructException(MutDiffException):
    """Exception raised for constructs outside the mini-language (calls, arrays, floats, ...)."""

    def __init__(self, construct: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: unsupported construct: {construct}")
        self.construct = construct
        self.line = line
        self.col = col


# Execution outcomes


class ExecutionException(MutDiffException):
    """A run of a program that does not produce an output environment."""


class NonTerminationException(ExecutionException):
    """Exception raised when the step budget of the interpreter is exhausted."""

    def __init__(self, max_steps: int):
        super().__init__(f"no termination within {max_steps} steps")
        self.max_steps = max_steps


class DomainOverflowException(ExecutionException):
    """Exception raised when a value leaves the configured integer domain."""

    def __init__(self, value: int, location: Any = None):
        super().__init__(f"{location}: value {value} leaves the integer domain")
        self.value = value
        self.location = location


class DivisionByZeroException(ExecutionException):
    """Exception raised on integer division or remainder by zero."""

    def __init__(self, location: Any = None):
        super().__init__(f"{location}: division by zero")
        self.location = location


class InvalidInputException(MutDiffException, ValueError):
    """Exception raised when an input environment does not match a program's declared inputs."""


# Mutation


class InvalidLocationException(MutDiffException):
    """Exception raised when an AST path does not denote a mutable expression."""


class IllTypedMutationException(MutDiffException):
    """Exception raised when a replacement would make the program ill-typed."""


class NotAMutationException(MutDiffException):
    """Exception raised when a replacement leaves the program syntactically unchanged."""


# Constraints


class NoOutputsException(MutDiffException):
    """Exception raised when a joint system would have no output pair to distinguish."""


class SolverInternalException(MutDiffException):
    """Exception raised when the solver produces an assignment the checker rejects."""


class DeadlineExceededException(MutDiffException):
    """Exception raised by a deadline check once its wall-clock budget is spent."""


# Detection


class WitnessValidationFailure(MutDiffException):
    """Exception raised when a solver witness is refuted by concrete execution."""

    def __init__(self, message: str, mutant_id: Optional[str] = None):
        super().__init__(message)
        self.mutant_id = mutant_id


# Reporting


class PreconditionViolationException(MutDiffException, ValueError):
    """Exception raised when score operands violate their preconditions."""


class SuiteFormatException(MutDiffException):
    """Exception raised when a test-suite file cannot be loaded."""
