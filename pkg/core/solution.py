"""
Solver results and independent checking of edit scripts.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from core.instance import (
    AnnotatedInstance,
    Edit,
    EditKind,
    Pair,
    Params,
    active_components,
    normalize_pair,
)

logger = logging.getLogger(__name__)

Cluster = Tuple[int, ...]


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"


@dataclass
class Solution:
    verdict: Verdict
    script: List[Edit] = field(default_factory=list)
    clusters: List[Cluster] = field(default_factory=list)
    no_reason: Optional[str] = None

    @classmethod
    def yes(cls, script: Sequence[Edit], clusters: Iterable[Cluster]) -> "Solution":
        ordered = sorted(tuple(sorted(c)) for c in clusters)
        return cls(Verdict.YES, list(script), ordered)

    @classmethod
    def no(cls, reason: str) -> "Solution":
        return cls(Verdict.NO, no_reason=reason)

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def cost(self) -> Optional[int]:
        return len(self.script) if self.is_yes else None


@dataclass
class ValidationReport:
    valid: bool
    reason: str = "ok"
    clusters: List[Cluster] = field(default_factory=list)


def validate_solution(
    n: int,
    edges: Iterable[Pair],
    script: Sequence[Edit],
    params: Params,
    alpha: Optional[Dict[int, int]] = None,
    delta: Optional[Dict[int, int]] = None,
) -> ValidationReport:
    """Check that ``script`` turns the graph into a valid clustering.

    Checks, in order: the script applies cleanly with every pair edited at
    most once, the result is a cluster graph, clusters reach size s, no
    vertex exceeds its alpha/delta and the script fits into k.
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(edges)

    touched = set()
    added = [0] * n
    deleted = [0] * n
    for edit in script:
        if edit.v >= n or edit.u < 0:
            return ValidationReport(False, f"{edit} names a vertex outside 0..{n - 1}")
        pair = normalize_pair(edit.u, edit.v)
        if pair in touched:
            return ValidationReport(False, f"pair {pair[0]}-{pair[1]} is edited twice")
        touched.add(pair)
        if edit.kind is EditKind.ADD:
            if graph.has_edge(*pair):
                return ValidationReport(False, f"{edit} adds an existing edge")
            graph.add_edge(*pair)
            counts = added
        else:
            if not graph.has_edge(*pair):
                return ValidationReport(False, f"{edit} deletes a missing edge")
            graph.remove_edge(*pair)
            counts = deleted
        counts[edit.u] += 1
        counts[edit.v] += 1

    clusters = sorted(tuple(sorted(part)) for part in nx.connected_components(graph))
    for cluster in clusters:
        size = len(cluster)
        if graph.subgraph(cluster).number_of_edges() != size * (size - 1) // 2:
            return ValidationReport(False, f"component {cluster[0]} is not a clique", clusters)
    for cluster in clusters:
        if len(cluster) < params.s:
            return ValidationReport(False, f"cluster of {cluster[0]} has size {len(cluster)} < {params.s}", clusters)

    alpha = alpha or {}
    delta = delta or {}
    for v in range(n):
        if added[v] > alpha.get(v, params.a):
            return ValidationReport(False, f"alpha exceeded at vertex {v}", clusters)
        if deleted[v] > delta.get(v, params.d):
            return ValidationReport(False, f"delta exceeded at vertex {v}", clusters)
    if params.k is not None and len(script) > params.k:
        return ValidationReport(False, f"{len(script)} edits exceed k={params.k}", clusters)
    return ValidationReport(True, "ok", clusters)


def solution_from_instance(inst: AnnotatedInstance) -> Solution:
    """Read a Yes answer off a solved instance and check it against the original graph."""
    clusters = list(inst.removed_clusters) + [part for part, _ in active_components(inst)]
    solution = Solution.yes(inst.edit_log, clusters)
    report = validate_solution(
        inst.n,
        inst.original_edges,
        solution.script,
        inst.params,
        alpha=inst.alpha_overrides(),
        delta=inst.delta_overrides(),
    )
    if not report.valid:
        raise RuntimeError(f"Solver produced an invalid script: {report.reason}")
    if report.clusters != solution.clusters:
        raise RuntimeError("Solver cluster list disagrees with the edited graph")
    return solution
