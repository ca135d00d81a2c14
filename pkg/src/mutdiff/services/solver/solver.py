"""Complete finite-domain solver for constraint systems built from SSA programs.

SSA equations are functional in the inputs, so the search branches only on free variables
(the variables no equation defines) and evaluates every equation forward as soon as the free
variables it depends on are bound. Values are tried in the order 0, 1, -1, 2, -2, ... so
witnesses stay small. Single-variable constraints filter value lists up front, and interval
reasoning prunes large subtrees whose constraints cannot hold.
"""
import heapq
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Set, Tuple, Union

from mutdiff.exceptions import DeadlineExceededException, ExecutionException, SolverInternalException
from mutdiff.models.ast import VarType
from mutdiff.models.constraints import (
    Blocking,
    Constraint,
    ConstraintSystem,
    Solution,
    SolverStats,
    SolveResult,
    SolveStatus,
)
from mutdiff.services.solver.checker import check_assignment
from mutdiff.services.solver.compiler import (
    Env,
    compile_check,
    compile_definition,
    constraint_dependencies,
    defined_variable,
)
from mutdiff.services.solver.intervals import IntervalEnv, check_possible, definition_interval, point
from mutdiff.services.lang.semantics import Value
from mutdiff.utils.deadline import Deadline
from mutdiff.utils.logger import get_logger

logger = get_logger(__name__)

# Interval pruning is attempted only above subtrees with at least this many leaves
INTERVAL_SUBTREE_THRESHOLD = 64


def value_order(lo: int, hi: int) -> List[int]:
    """0, 1, -1, 2, -2, ... restricted to [lo, hi]."""
    start = min(max(0, lo), hi)
    values = [start]
    step = 1
    while start + step <= hi or start - step >= lo:
        if start + step <= hi:
            values.append(start + step)
        if start - step >= lo:
            values.append(start - step)
        step += 1
    return values


@dataclass
class _Step:
    constraint: Constraint
    var: Optional[str]
    run: Callable[[Env], Value]
    level: int
    support: Set[str] = field(default_factory=set)


class SearchPlan:
    """Static analysis of a system: definitions in dependency order, free variables, and the
    search level at which each definition and check becomes evaluable."""

    def __init__(self, cs: ConstraintSystem):
        self.cs = cs
        definitions, checks = self._split(cs.constraints)
        definitions, demoted = self._order(definitions)
        checks += demoted

        defined = {defined_variable(c) for c in definitions}
        ordered_names = list(dict.fromkeys(list(cs.input_vars) + list(cs.variables)))
        self.free_vars: List[str] = [name for name in ordered_names if name not in defined]
        index = {name: i for i, name in enumerate(self.free_vars)}

        var_level: Dict[str, int] = dict(index)
        var_support: Dict[str, Set[str]] = {name: {name} for name in self.free_vars}
        self.definitions: List[_Step] = []
        for constraint in definitions:
            deps = constraint_dependencies(constraint)
            var = defined_variable(constraint)
            level = max((var_level[d] for d in deps), default=-1)
            support = set().union(*(var_support[d] for d in deps)) if deps else set()
            var_level[var], var_support[var] = level, support
            self.definitions.append(_Step(constraint, var, compile_definition(constraint, cs), level, support))

        self.checks: List[_Step] = []
        for constraint in checks:
            deps = constraint_dependencies(constraint)
            var = defined_variable(constraint)
            if var is not None:
                deps = deps | {var}
            level = max((var_level[d] for d in deps), default=-1)
            support = set().union(*(var_support[d] for d in deps)) if deps else set()
            self.checks.append(_Step(constraint, None, compile_check(constraint, cs), level, support))

        n = len(self.free_vars)
        self.levels: List[List[_Step]] = [[] for _ in range(n + 1)]  # slot 0 holds constants
        for step in self.definitions + self.checks:
            self.levels[step.level + 1].append(step)

        self.neutral: Dict[str, int] = {
            name: (cs.domain.neutral_int if var_type == VarType.INT else 0) for name, var_type in cs.variables.items()
        }

    @staticmethod
    def _split(constraints) -> Tuple[List[Constraint], List[Constraint]]:
        definitions, checks, defined = [], [], set()
        for constraint in constraints:
            var = defined_variable(constraint)
            if var is not None and var not in defined and var not in constraint_dependencies(constraint):
                defined.add(var)
                definitions.append(constraint)
            else:
                checks.append(constraint)
        return definitions, checks

    @staticmethod
    def _order(definitions: List[Constraint]) -> Tuple[List[Constraint], List[Constraint]]:
        """Topological order (stable w.r.t. the input order); cycle members become checks."""
        definer = {defined_variable(c): i for i, c in enumerate(definitions)}
        deps = [
            {definer[d] for d in constraint_dependencies(c) if d in definer} for c in definitions
        ]
        users: Dict[int, List[int]] = {i: [] for i in range(len(definitions))}
        for i, ds in enumerate(deps):
            for d in ds:
                users[d].append(i)
        pending = [len(ds) for ds in deps]
        alive = set(range(len(definitions)))
        ordered, demoted = [], []

        ready = [i for i in alive if pending[i] == 0]
        heapq.heapify(ready)
        while alive:
            if not ready:
                # break a cycle: the earliest remaining definition is checked instead
                victim = min(alive)
                alive.discard(victim)
                demoted.append(definitions[victim])
                for user in users[victim]:
                    pending[user] -= 1
                    if pending[user] == 0 and user in alive:
                        heapq.heappush(ready, user)
                continue
            i = heapq.heappop(ready)
            if i not in alive:
                continue
            alive.discard(i)
            ordered.append(definitions[i])
            for user in users[i]:
                pending[user] -= 1
                if pending[user] == 0 and user in alive:
                    heapq.heappush(ready, user)
        return ordered, demoted

    def candidate_values(self, name: str) -> List[Value]:
        if self.cs.variables[name] == VarType.BOOL:
            return [False, True]
        return value_order(self.cs.domain.int_min, self.cs.domain.int_max)


class SolverSession:
    """One search over a system that can be continued after blocking clauses are added.

    Continuing the enumeration yields exactly the solutions a fresh search of the extended
    system would find, in the same order.
    """

    def __init__(self, cs: ConstraintSystem, deadline: Optional[Deadline] = None):
        self.system = cs
        self.deadline = deadline or Deadline(cs.domain.solver_timeout)
        self.plan = SearchPlan(cs)
        self.stats = SolverStats()
        self._late_checks: List[Callable[[Env], bool]] = []
        self._search = self._run()
        self._finished: Optional[SolveStatus] = None

    def block(self, assignment: Union[Mapping[str, Value], Blocking]) -> Blocking:
        blocking = assignment if isinstance(assignment, Blocking) else Blocking.from_environment(assignment)
        unknown = [name for name, _ in blocking.assignment if name not in self.system.variables]
        if unknown:
            raise ValueError(f"blocking clause mentions unknown variables {unknown}")
        self.system = self.system.with_constraint(blocking)
        self._late_checks.append(compile_check(blocking, self.system))
        return blocking

    def next_solution(self) -> SolveResult:
        if self._finished is not None:
            return SolveResult(self._finished, None, self.stats)
        try:
            assignment = next(self._search)
        except StopIteration:
            self._finished = SolveStatus.UNSAT
            return SolveResult(SolveStatus.UNSAT, None, self.stats)
        except DeadlineExceededException:
            self._finished = SolveStatus.TIMEOUT
            logger.debug(f"Solver timed out on {self.system.name} after {self.stats.nodes} nodes")
            return SolveResult(SolveStatus.TIMEOUT, None, self.stats)

        if not check_assignment(self.system, assignment):
            raise SolverInternalException(f"solver produced an assignment violating {self.system.name}")
        self.stats.solutions += 1
        return SolveResult(SolveStatus.SAT, Solution(assignment), self.stats)

    def __iter__(self) -> Iterator[Solution]:
        while True:
            result = self.next_solution()
            if result.status != SolveStatus.SAT:
                return
            yield result.solution

    # Search

    def _evaluate_level(self, level: int, env: Env) -> bool:
        for step in self.plan.levels[level + 1]:
            if step.var is not None:
                try:
                    env[step.var] = step.run(env)
                except ExecutionException:
                    return False
            elif not step.run(env):
                return False
        return True

    def _filtered_values(self, index: int, env: Env) -> List[Value]:
        """Values of one free variable that survive every constraint depending on it alone."""
        name = self.plan.free_vars[index]
        unary = [
            step
            for step in self.plan.definitions + self.plan.checks
            if step.support == {name}
        ]
        if not unary:
            return self.plan.candidate_values(name)
        values = []
        for value in self.plan.candidate_values(name):
            self.deadline.check()
            local = dict(env)
            local[name] = value
            if self._unary_consistent(unary, local):
                values.append(value)
            else:
                self.stats.filtered_values += 1
        return values

    @staticmethod
    def _unary_consistent(steps: List[_Step], env: Env) -> bool:
        for step in steps:
            if step.var is not None:
                try:
                    env[step.var] = step.run(env)
                except ExecutionException:
                    return False
            elif not step.run(env):
                return False
        return True

    def _intervals_possible(self, index: int, env: Env) -> bool:
        """Interval check of everything not yet evaluable once free variables 0..index are bound."""
        cs, plan = self.system, self.plan
        intervals: IntervalEnv = {}
        for i, name in enumerate(plan.free_vars):
            intervals[name] = point(env[name]) if i <= index else cs.bounds(name)
        for step in plan.definitions:
            if step.level <= index:
                intervals[step.var] = point(env[step.var])
                continue
            value = definition_interval(step.constraint, intervals, cs.domain, plan.neutral[step.var])
            if value is None:
                return False
            intervals[step.var] = value
        for step in plan.checks:
            if step.level > index:
                var = defined_variable(step.constraint)
                neutral = plan.neutral[var] if var is not None else 0
                if not check_possible(step.constraint, intervals, cs.domain, neutral):
                    return False
        return True

    def _run(self) -> Iterator[Dict[str, Value]]:
        env: Env = {}
        self.deadline.check()
        if not self._evaluate_level(-1, env):
            return
        domains = [self._filtered_values(i, env) for i in range(len(self.plan.free_vars))]
        if any(not values for values in domains):
            return
        subtree = [1] * (len(domains) + 1)
        for i in range(len(domains) - 1, -1, -1):
            subtree[i] = subtree[i + 1] * len(domains[i])
        yield from self._descend(0, env, domains, subtree)

    def _descend(self, index: int, env: Env, domains: List[List[Value]], subtree: List[int]):
        self.stats.nodes += 1
        self.deadline.check()
        if index == len(domains):
            if all(check(env) for check in self._late_checks):
                yield {name: env[name] for name in self.system.variables}
            return
        name = self.plan.free_vars[index]
        use_intervals = subtree[index + 1] >= INTERVAL_SUBTREE_THRESHOLD
        for value in domains[index]:
            env[name] = value
            if not self._evaluate_level(index, env):
                continue
            if use_intervals and not self._intervals_possible(index, env):
                self.stats.pruned_by_intervals += 1
                continue
            yield from self._descend(index + 1, env, domains, subtree)


def solve(cs: ConstraintSystem, deadline: Optional[Deadline] = None) -> SolveResult:
    """Sat with a checked solution, Unsat when no assignment satisfies cs, or Timeout."""
    result = SolverSession(cs, deadline).next_solution()
    logger.debug(
        f"Solved {cs.name}: {result.status.value}, {result.stats.nodes} nodes, "
        f"{result.stats.pruned_by_intervals} interval prunes"
    )
    return result


def iter_solutions(cs: ConstraintSystem, deadline: Optional[Deadline] = None) -> Iterator[Solution]:
    return iter(SolverSession(cs, deadline))
