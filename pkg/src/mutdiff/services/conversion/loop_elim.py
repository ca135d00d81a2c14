"""Loop elimination: every ``while (c) { B }`` becomes a nested conditional of depth nd.

U(k) = ``if (c) { B; U(k-1) }`` and U(0) = ``if (c) { loop_<line> = true; }``. Inner loops are
expanded first with the same nd, and all copies of an inner loop share its single flag.
"""
from typing import Dict, List, Set, Tuple

from mutdiff.constants import LOOP_FLAG_PREFIX
from mutdiff.models.ast import (
    Assign,
    BoolConst,
    Decl,
    If,
    LoopFreeProgram,
    Program,
    Statement,
    VarType,
    While,
    iter_statements,
)
from mutdiff.services.lang.checker import recheck
from mutdiff.utils.logger import get_logger

logger = get_logger(__name__)


class LoopEliminator:
    def __init__(self, program: Program, nd: int):
        if nd < 1:
            raise ValueError(f"nesting depth must be at least 1, got {nd}")
        self.program = program
        self.nd = nd
        self.flags: Dict[int, str] = {}  # id(While) -> flag name

    def _assign_flag_names(self) -> List[str]:
        taken: Set[str] = set(self.program.variable_types)
        names = []
        for stmt in iter_statements(self.program.body):
            if isinstance(stmt, While):
                name = f"{LOOP_FLAG_PREFIX}{stmt.line}"
                while name in taken:
                    name += "_"
                taken.add(name)
                self.flags[id(stmt)] = name
                names.append(name)
        return names

    def run(self) -> LoopFreeProgram:
        flag_names = self._assign_flag_names()
        if not flag_names:
            return LoopFreeProgram(self.program, (), self.nd)

        flag_decls = tuple(Decl(name, VarType.BOOL, BoolConst(False)) for name in flag_names)
        body = _demote_repeated_declarations(flag_decls + self._expand_block(self.program.body))
        program = recheck(Program(self.program.name, self.program.inputs, self.program.outputs, body))
        logger.debug(f"Eliminated {len(flag_names)} loops of {self.program.name} with nd={self.nd}")
        return LoopFreeProgram(program, tuple(flag_names), self.nd)

    def _expand_block(self, body: Tuple[Statement, ...]) -> Tuple[Statement, ...]:
        return tuple(self._expand(stmt) for stmt in body)

    def _expand(self, stmt: Statement) -> Statement:
        if isinstance(stmt, If):
            return If(stmt.cond, self._expand_block(stmt.then_body), self._expand_block(stmt.else_body), stmt.loc)
        if isinstance(stmt, While):
            inner = self._expand_block(stmt.body)
            unrolled: Statement = If(stmt.cond, (Assign(self.flags[id(stmt)], BoolConst(True)),), (), stmt.loc)
            for _ in range(self.nd):
                unrolled = If(stmt.cond, inner + (unrolled,), (), stmt.loc)
            return unrolled
        return stmt


def _demote_repeated_declarations(body: Tuple[Statement, ...]) -> Tuple[Statement, ...]:
    """Unrolled copies repeat the declarations of a loop body; all but the first become assignments."""
    declared: Set[str] = set()

    def walk(block: Tuple[Statement, ...]) -> Tuple[Statement, ...]:
        result = []
        for stmt in block:
            if isinstance(stmt, Decl):
                if stmt.name in declared:
                    stmt = Assign(stmt.name, stmt.init, stmt.loc)
                else:
                    declared.add(stmt.name)
            elif isinstance(stmt, If):
                stmt = If(stmt.cond, walk(stmt.then_body), walk(stmt.else_body), stmt.loc)
            result.append(stmt)
        return tuple(result)

    return walk(body)


def eliminate_loops(program: Program, nd: int) -> LoopFreeProgram:
    return LoopEliminator(program, nd).run()


def flag_variables(lfp: LoopFreeProgram) -> List[str]:
    return list(lfp.loop_flags)
