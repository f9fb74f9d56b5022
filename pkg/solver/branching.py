"""
Exact search-tree solvers: conflict-triple branching with reduction at every node.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from core.instance import (
    AnnotatedInstance,
    Edit,
    EditKind,
    NoInstance,
    PairState,
    active_components,
    apply_edit,
    find_conflict_triple,
)
from core.solution import Solution, solution_from_instance
from reduction.driver import reduce

logger = logging.getLogger(__name__)

EXHAUSTED = "exhausted"


@dataclass
class SolveStats:
    nodes_expanded: int = 0
    reductions_applied: int = 0
    branch_free: bool = True
    budget_sensitive: bool = False
    attempts: int = 1


@dataclass
class SearchNode:
    instance: AnnotatedInstance
    depth: int = 0


SearchResult = Union[AnnotatedInstance, NoInstance]


def _edit_possible(inst: AnnotatedInstance, edit: Edit) -> bool:
    state = inst.state(edit.u, edit.v)
    if edit.kind is EditKind.ADD:
        return state is PairState.NON_EDGE
    return state is PairState.EDGE


def _repair_edits(inst: AnnotatedInstance) -> Optional[List[Edit]]:
    """Additions that grow the first undersized cluster, or None when none is undersized.

    The candidate partner is every active vertex outside the cluster, tried in
    ascending order; the addition joins it to the cluster's smallest member.
    """
    for members, _ in active_components(inst):
        if len(members) >= inst.params.s:
            continue
        anchor = members[0]
        inside = set(members)
        return [
            Edit.add(anchor, y)
            for y in inst.vertices()
            if y not in inside and inst.state(anchor, y) is PairState.NON_EDGE
        ]
    return None


def _search(node: SearchNode, stats: SolveStats) -> SearchResult:
    stats.nodes_expanded += 1
    inst = node.instance
    outcome = reduce(inst, in_place=True)
    if isinstance(outcome, NoInstance):
        stats.budget_sensitive = stats.budget_sensitive or outcome.budget_limited
        return outcome
    stats.reductions_applied += outcome.applied
    stats.budget_sensitive = stats.budget_sensitive or outcome.budget_sensitive

    triple = find_conflict_triple(inst)
    if triple is not None:
        u, v, w = triple
        edits = [Edit.delete(u, v), Edit.delete(u, w), Edit.add(v, w)]
    else:
        edits = _repair_edits(inst)
        if edits is None:
            return inst

    stats.branch_free = False
    for edit in edits:
        if not _edit_possible(inst, edit):
            continue
        child = inst.copy()
        applied = apply_edit(child, edit)
        if isinstance(applied, NoInstance):
            stats.budget_sensitive = stats.budget_sensitive or applied.budget_limited
            continue
        found = _search(SearchNode(child, node.depth + 1), stats)
        if not isinstance(found, NoInstance):
            return found
    return NoInstance(EXHAUSTED, f"no branch below depth {node.depth} leads to a clustering")


def solve_decision(inst: AnnotatedInstance) -> Tuple[Solution, SolveStats]:
    """Decide whether ``inst`` has a solution within its global budget k."""
    if inst.residual_k is None:
        raise ValueError("solve_decision needs a global budget k; use solve_minimum without one")
    stats = SolveStats()
    found = _search(SearchNode(inst.copy()), stats)
    if isinstance(found, NoInstance):
        logger.info("No solution within k=%s after %d nodes (%s)", inst.params.k, stats.nodes_expanded, found.reason)
        return Solution.no(found.reason), stats
    solution = solution_from_instance(found)
    logger.info("Found %d edits after %d nodes", solution.cost, stats.nodes_expanded)
    return solution, stats


def solve_minimum(inst: AnnotatedInstance) -> Tuple[Solution, SolveStats]:
    """Find a minimum-cost solution by iterative deepening on k.

    Stops early with No when an attempt was refuted without the budget
    taking part, since a larger k cannot help then.
    """
    base = inst.with_budget(None)
    limit = inst.n * (inst.n - 1) // 2
    stats = SolveStats()
    for k in range(limit + 1):
        logger.debug("Iterative deepening: trying k=%d", k)
        solution, stats = solve_decision(base.with_budget(k))
        stats.attempts = k + 1
        if solution.is_yes:
            return solution, stats
        if not stats.budget_sensitive:
            logger.info("Refutation at k=%d did not depend on k; stopping", k)
            return solution, stats
    return Solution.no(EXHAUSTED), stats
