from typing import AbstractSet, List, Optional, Union

from mutdiff.exceptions import (
    IllTypedMutationException,
    InvalidLocationException,
    NotAMutationException,
    RedeclaredVariableException,
    TypeMismatchException,
    UndeclaredVariableException,
    UnsupportedConstructException,
    UseBeforeDefinitionException,
)
from mutdiff.models.ast import Binary, BoolConst, IntConst, Program, Unary, VarRef
from mutdiff.models.mutant import Mutant, MutationEdit, MutationOperatorClass
from mutdiff.schemas.mutant import MutantRecord
from mutdiff.services.lang.ast_paths import AstPath, get_node, iter_expression_sites, parse_path, replace_node
from mutdiff.services.lang.checker import recheck
from mutdiff.services.mutation.operators import OPERATORS
from mutdiff.utils.logger import get_logger

logger = get_logger(__name__)

_EXPRESSION_TYPES = (IntConst, BoolConst, VarRef, Binary, Unary)
_CHECK_ERRORS = (
    TypeMismatchException,
    UndeclaredVariableException,
    UseBeforeDefinitionException,
    RedeclaredVariableException,
    UnsupportedConstructException,
)


def apply_mutation(program: Program, location: Union[AstPath, str], edit: MutationEdit) -> Program:
    """Replace the expression at location and return the re-checked mutated program.

    Raises:
        InvalidLocationException: location does not denote an expression of program
        NotAMutationException: the replacement equals the original fragment
        IllTypedMutationException: the mutated program fails type or definedness checking
    """
    path = parse_path(location) if isinstance(location, str) else tuple(location)
    original = get_node(program, path)
    if not path or path[0] != "body" or not isinstance(original, _EXPRESSION_TYPES):
        raise InvalidLocationException(f"'{location}' does not denote an expression")

    replacement = edit.replacement
    if isinstance(replacement, str):
        if not isinstance(original, (Binary, Unary)):
            raise InvalidLocationException(f"'{location}' holds no operator to replace")
        if isinstance(original, Binary):
            replacement = Binary(replacement, original.lhs, original.rhs, original.loc)
        else:
            replacement = Unary(replacement, original.operand, original.loc)

    if replacement == original:
        raise NotAMutationException(f"replacement at '{location}' leaves the program unchanged")

    mutated = replace_node(program, path, replacement)
    try:
        return recheck(mutated)
    except _CHECK_ERRORS as e:
        raise IllTypedMutationException(f"mutation at '{location}' is rejected: {e}") from e


def generate_mutants(
    program: Program, enabled: Optional[AbstractSet[MutationOperatorClass]] = None
) -> List[Mutant]:
    """All distinct well-typed single-point mutants, in AST pre-order then operator table order."""
    enabled = MutationOperatorClass.defaults() if enabled is None else enabled
    strategies = [OPERATORS[op] for op in MutationOperatorClass if op in enabled]

    mutants: List[Mutant] = []
    seen_bodies = {program.body}
    for path, expr in iter_expression_sites(program):
        for strategy in strategies:
            for replacement in strategy.candidates(expr, program):
                try:
                    mutated = apply_mutation(program, path, MutationEdit(strategy.operator_class, replacement))
                except (IllTypedMutationException, NotAMutationException):
                    continue
                if mutated.body in seen_bodies:
                    continue
                seen_bodies.add(mutated.body)
                mutants.append(
                    Mutant(
                        id=f"{program.name}-m{len(mutants) + 1:03d}",
                        base=program,
                        location=path,
                        operator_class=strategy.operator_class,
                        original_fragment=expr,
                        mutated_fragment=replacement,
                        program=mutated,
                    )
                )

    logger.info(f"Generated {len(mutants)} mutants for {program.name}")
    return mutants


def mutant_records(mutants: List[Mutant]) -> List[MutantRecord]:
    return [MutantRecord.from_mutant(mutant) for mutant in mutants]
