from pathlib import Path
from typing import Dict, Optional, Tuple

import click
from pydantic import ValidationError

from mutdiff.constants import EXIT_PARSE_ERROR
from mutdiff.exceptions import MutDiffException
from mutdiff.models.ast import Program
from mutdiff.models.mutant import MutationOperatorClass
from mutdiff.models.schemas.config import DetectorConfig, DomainConfig, FlagStrategy
from mutdiff.schemas.test_case import Scalar
from mutdiff.services.lang.parser import parse, read_source


class DomainType(click.ParamType):
    """MIN:MAX, e.g. 0:15 or -128:127"""

    name = "MIN:MAX"

    def convert(self, value, param, ctx) -> Tuple[int, int]:
        if isinstance(value, tuple):
            return value
        try:
            lo, hi = value.split(":")
            return int(lo), int(hi)
        except ValueError:
            self.fail(f"{value!r} is not of the form MIN:MAX", param, ctx)


class OperatorListType(click.ParamType):
    name = "OPS"

    def convert(self, value, param, ctx):
        if isinstance(value, frozenset):
            return value
        try:
            return MutationOperatorClass.parse_list(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


class InputAssignmentType(click.ParamType):
    """name=value pairs separated by commas; values are integers or true/false"""

    name = "NAME=VALUE,..."

    def convert(self, value, param, ctx) -> Dict[str, Scalar]:
        if isinstance(value, dict):
            return value
        inputs: Dict[str, Scalar] = {}
        for part in filter(None, (p.strip() for p in value.split(","))):
            name, sep, text = part.partition("=")
            if not sep or not name.strip():
                self.fail(f"{part!r} is not of the form name=value", param, ctx)
            text = text.strip()
            if text in ("true", "false"):
                inputs[name.strip()] = text == "true"
                continue
            try:
                inputs[name.strip()] = int(text)
            except ValueError:
                self.fail(f"{text!r} is neither an integer nor true/false", param, ctx)
        return inputs


DOMAIN = DomainType()
OPERATORS = OperatorListType()
INPUT_ASSIGNMENT = InputAssignmentType()


def build_domain(domain: Optional[Tuple[int, int]], timeout: Optional[float] = None) -> DomainConfig:
    values = {}
    if domain is not None:
        values["int_min"], values["int_max"] = domain
    if timeout is not None:
        values["solver_timeout"] = timeout
    try:
        return DomainConfig(**values)
    except ValidationError as e:
        raise click.BadParameter(_first_error(e), param_hint="--domain/--timeout") from e


def build_config(
    nd: Optional[int],
    nd_max: Optional[int],
    domain: Optional[Tuple[int, int]],
    timeout: Optional[float],
    max_blocking_rounds: Optional[int] = None,
    flag_strategy: Optional[str] = None,
) -> DetectorConfig:
    """DetectorConfig from CLI flags; flags left out fall back to settings."""
    values = {"domain": build_domain(domain, timeout)}
    if nd is not None:
        values["nd_initial"] = nd
    if nd_max is not None:
        values["nd_max"] = nd_max
    if max_blocking_rounds is not None:
        values["max_blocking_rounds"] = max_blocking_rounds
    if flag_strategy is not None:
        values["flag_strategy"] = FlagStrategy(flag_strategy)
    try:
        return DetectorConfig(**values)
    except ValidationError as e:
        raise click.BadParameter(_first_error(e), param_hint="--nd/--nd-max") from e


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    return first["msg"]


def load_program(path: Path) -> Program:
    """Read and parse a source file; failures end the command with exit code 1."""
    try:
        return parse(read_source(path))
    except (OSError, MutDiffException) as e:
        click.echo(f"{path}: {e}", err=True)
        raise click.exceptions.Exit(EXIT_PARSE_ERROR)
