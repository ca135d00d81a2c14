from dataclasses import dataclass
from typing import Optional

from mutdiff.models.ast import LoopFreeProgram, Program
from mutdiff.models.constraints import ConstraintSystem
from mutdiff.models.schemas.config import DomainConfig
from mutdiff.models.ssa import SsaProgram
from mutdiff.services.conversion.encoder import encode
from mutdiff.services.conversion.loop_elim import eliminate_loops
from mutdiff.services.conversion.ssa import rename_for_mutant, to_ssa


@dataclass(frozen=True)
class Conversion:
    """Every intermediate stage of converting one program at one nesting depth."""

    program: Program
    nd: int
    loop_free: LoopFreeProgram
    ssa: SsaProgram
    system: ConstraintSystem


def convert_stages(
    program: Program, nd: int, domain: Optional[DomainConfig] = None, suffix: str = ""
) -> Conversion:
    loop_free = eliminate_loops(program, nd)
    ssa = to_ssa(loop_free)
    if suffix:
        ssa = rename_for_mutant(ssa, suffix)
    return Conversion(program, nd, loop_free, ssa, encode(ssa, domain))


def convert(program: Program, nd: int, domain: Optional[DomainConfig] = None) -> ConstraintSystem:
    """Loop elimination, SSA conversion and encoding composed; flags are annotated on the system."""
    return convert_stages(program, nd, domain).system
