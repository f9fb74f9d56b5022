"""
Matching path for (a, d) = (0, 1) with s <= 2.

Without additions every final cluster is a clique of the input graph, and a
vertex may lose at most one edge. After reduction every triangle has been
removed as an isolated clique, so the remaining graph is triangle-free and a
vertex of degree three or more cannot be kept in a clique. What is left is a
union of paths and cycles; choosing the kept edges is a maximum matching on
each of them, solved by a left-to-right pass.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from core.instance import AnnotatedInstance, Edit, NoInstance, PairState, apply_edit
from core.solution import Solution, solution_from_instance
from reduction.driver import reduce
from solver.branching import SolveStats

logger = logging.getLogger(__name__)


def in_zero_one_regime(a: int, d: int, s: int) -> bool:
    return a == 0 and d == 1 and s <= 2


def _walk(graph: nx.Graph, start: int) -> List[int]:
    """Vertices of a path or cycle component in walking order from ``start``."""
    order = [start]
    seen = {start}
    current = start
    while True:
        step = [w for w in sorted(graph.neighbors(current)) if w not in seen]
        if not step:
            return order
        current = step[0]
        seen.add(current)
        order.append(current)


def _best_matching(
    path: Sequence[int],
    forced: Sequence[bool],
    must: Dict[int, bool],
    first_taken: bool = False,
    last_taken: bool = False,
) -> Optional[List[int]]:
    """Indices of kept edges along ``path`` (edge i joins path[i] and path[i+1]).

    ``forced[i]`` marks edges that must be kept; ``must[v]`` marks vertices
    that must end up matched. ``first_taken`` and ``last_taken`` say the end
    vertices are already matched by an edge outside the path.
    """
    m = len(path)
    best = [{False: None, True: None} for _ in range(m)]
    back = [{} for _ in range(m)]
    best[0][first_taken] = 0

    def offer(i: int, state: bool, score: int, origin: Tuple[bool, bool]) -> None:
        if best[i][state] is None or score > best[i][state]:
            best[i][state] = score
            back[i][state] = origin

    for i in range(m - 1):
        for matched in (False, True):
            score = best[i][matched]
            if score is None:
                continue
            if not matched and not (last_taken and i + 1 == m - 1):
                offer(i + 1, True, score + 1, (matched, True))
            if not forced[i] and (matched or not must[path[i]]):
                offer(i + 1, False, score, (matched, False))

    last = path[-1]
    finals = [
        state for state in (True, False)
        if best[m - 1][state] is not None and (state or last_taken or not must[last])
    ]
    if not finals:
        return None
    state = max(finals, key=lambda s: best[m - 1][s])
    kept = []
    for i in range(m - 1, 0, -1):
        previous, took = back[i][state]
        if took:
            kept.append(i - 1)
        state = previous
    return sorted(kept)


def _kept_edges(graph: nx.Graph, members: List[int], inst: AnnotatedInstance, must: Dict[int, bool]):
    sub = graph.subgraph(members)
    endpoints = [v for v in members if sub.degree(v) < 2]
    is_cycle = not endpoints
    path = _walk(sub, min(endpoints) if endpoints else min(members))

    def permanent(u: int, v: int) -> bool:
        return inst.state(u, v) is PairState.PERMANENT

    forced = [permanent(path[i], path[i + 1]) for i in range(len(path) - 1)]
    options = []
    if not is_cycle or not permanent(path[-1], path[0]):
        chosen = _best_matching(path, forced, must)
        if chosen is not None:
            options.append([(path[i], path[i + 1]) for i in chosen])
    if is_cycle:
        chosen = _best_matching(path, forced, must, first_taken=True, last_taken=True)
        if chosen is not None:
            options.append([(path[i], path[i + 1]) for i in chosen] + [(path[0], path[-1])])
    if not options:
        return None
    return max(options, key=len)


def solve_zero_one(inst: AnnotatedInstance) -> Tuple[Solution, SolveStats]:
    params = inst.params
    if not in_zero_one_regime(params.a, params.d, params.s):
        raise ValueError(
            f"(a={params.a}, d={params.d}, s={params.s}) is outside the (0, 1) regime with s <= 2"
        )
    stats = SolveStats(nodes_expanded=1)
    outcome = reduce(inst)
    if isinstance(outcome, NoInstance):
        return Solution.no(outcome.reason), stats
    work = outcome.instance
    stats.reductions_applied = outcome.applied
    stats.budget_sensitive = outcome.budget_sensitive

    graph = work.to_graph(active_only=True)
    crowded = [v for v in graph.nodes if graph.degree(v) >= 3]
    if crowded:
        return Solution.no("degree"), stats

    must = {v: params.s >= 2 or graph.degree(v) > work.delta[v] for v in graph.nodes}
    deletions = []
    for part in sorted(nx.connected_components(graph), key=min):
        members = sorted(part)
        kept = _kept_edges(graph, members, work, must)
        if kept is None:
            return Solution.no("matching"), stats
        keep = {tuple(sorted(e)) for e in kept}
        deletions.extend(e for e in graph.subgraph(members).edges if tuple(sorted(e)) not in keep)

    for u, v in sorted(tuple(sorted(e)) for e in deletions):
        applied = apply_edit(work, Edit.delete(u, v))
        if isinstance(applied, NoInstance):
            return Solution.no(applied.reason), stats

    solution = solution_from_instance(work)
    logger.info("Matching path kept %d clusters with %d edits", len(solution.clusters), solution.cost)
    return solution, stats
