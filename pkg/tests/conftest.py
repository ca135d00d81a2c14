import itertools
from pathlib import Path
from typing import Dict, Iterator, List

import pytest

from mutdiff.exceptions import ExecutionException
from mutdiff.models.ast import Program, VarType
from mutdiff.models.mutant import Mutant, MutationOperatorClass
from mutdiff.models.schemas.config import DetectorConfig, DomainConfig
from mutdiff.services.lang.ast_paths import AstPath, get_node
from mutdiff.services.lang.interpreter import run_program
from mutdiff.services.lang.parser import parse

ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = ROOT / "corpus"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

# Oracle runs use a small step budget; corpus programs finish far below it on [0, 15]
ORACLE_MAX_STEPS = 10_000


def load_corpus_program(name: str) -> Program:
    return parse((CORPUS_DIR / f"{name}.mlang").read_text())


def corpus_names() -> List[str]:
    return sorted(path.stem for path in CORPUS_DIR.glob("*.mlang"))


def small_domain(timeout: float = 120.0) -> DomainConfig:
    return DomainConfig(int_min=0, int_max=15, solver_timeout=timeout)


def small_config(nd_initial: int = 2, nd_max: int = 5, **kwargs) -> DetectorConfig:
    return DetectorConfig(nd_initial=nd_initial, nd_max=nd_max, domain=small_domain(), **kwargs)


def manual_mutant(
    base: Program,
    mutated: Program,
    location: AstPath,
    operator_class: MutationOperatorClass = MutationOperatorClass.ROR,
    mutant_id: str = "manual-m001",
) -> Mutant:
    """A hand-written mutant of base whose change is at location."""
    return Mutant(
        id=mutant_id,
        base=base,
        location=location,
        operator_class=operator_class,
        original_fragment=get_node(base, location),
        mutated_fragment=get_node(mutated, location),
        program=mutated,
    )


def mult_variant(old: str, new: str) -> Program:
    return parse((CORPUS_DIR / "mult.mlang").read_text().replace(old, new))


def all_inputs(program: Program, domain: DomainConfig) -> Iterator[Dict]:
    """Every in-domain input of program, in a fixed order."""
    choices = [
        [False, True] if decl.var_type == VarType.BOOL else range(domain.int_min, domain.int_max + 1)
        for decl in program.inputs
    ]
    for values in itertools.product(*choices):
        yield dict(zip(program.input_names, values))


def distinguishing_inputs(p: Program, m: Program, domain: DomainConfig):
    """Yield (input, iterations) for every input on which both programs complete with different
    outputs; iterations is the most any loop needed in either run."""
    for inputs in all_inputs(p, domain):
        try:
            run_p = run_program(p, inputs, ORACLE_MAX_STEPS, domain)
            run_m = run_program(m, inputs, ORACLE_MAX_STEPS, domain)
        except ExecutionException:
            continue
        if run_p.outputs != run_m.outputs:
            yield inputs, max(run_p.max_iterations, run_m.max_iterations)


@pytest.fixture
def mult() -> Program:
    return load_corpus_program("mult")


@pytest.fixture
def domain() -> DomainConfig:
    return small_domain()


@pytest.fixture
def cfg() -> DetectorConfig:
    return small_config()
