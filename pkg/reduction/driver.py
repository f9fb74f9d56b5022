"""
Fixpoint driver for the reduction rules, plus kernel statistics and trace replay.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from core.instance import AnnotatedInstance, Edit, NoInstance, PairState, apply_edit
from reduction.rules import RULE_GROUPS, Reduced, ReductionOutcome
from reduction.trace import (
    ADD,
    CAP_DELTA,
    DELETE,
    FORBID,
    PERMANENT,
    REMOVE_CLUSTER,
    RuleTrace,
    TraceEntry,
)

logger = logging.getLogger(__name__)


def reduce(
    inst: AnnotatedInstance,
    *,
    in_place: bool = False,
    trace: Optional[RuleTrace] = None,
) -> ReductionOutcome:
    """Apply every rule group until none fires.

    A group runs only after all earlier groups are exhausted, so any change
    made by a later group sends the driver back to the first one.
    """
    work = inst if in_place else inst.copy()
    applied = 0
    sensitive = False
    index = 0
    while index < len(RULE_GROUPS):
        outcome = RULE_GROUPS[index](work, trace)
        if isinstance(outcome, NoInstance):
            return outcome.limited() if sensitive else outcome
        applied += outcome.applied
        sensitive = sensitive or outcome.budget_sensitive
        index = 0 if outcome.changed and index > 0 else index + 1
    logger.debug("Reduction reached a fixpoint after %d applications", applied)
    return Reduced(work, applied, sensitive)


def is_reduced(inst: AnnotatedInstance) -> bool:
    """True when no rule fires on ``inst``."""
    for group in RULE_GROUPS:
        outcome = group(inst.copy())
        if isinstance(outcome, NoInstance) or outcome.changed:
            return False
    return True


def replay_trace(inst: AnnotatedInstance, trace: Iterable[TraceEntry]) -> Union[AnnotatedInstance, NoInstance]:
    """Re-apply a recorded trace to a copy of ``inst``."""
    work = inst.copy()
    for entry in trace:
        if entry.action in (ADD, DELETE):
            u, v = entry.target
            edit = Edit.add(u, v) if entry.action == ADD else Edit.delete(u, v)
            outcome = apply_edit(work, edit)
            if isinstance(outcome, NoInstance):
                return outcome
        elif entry.action == PERMANENT:
            work.set_state(*entry.target, PairState.PERMANENT)
        elif entry.action == FORBID:
            work.set_state(*entry.target, PairState.FORBIDDEN)
        elif entry.action == CAP_DELTA:
            (v,) = entry.target
            work.delta_trimmed[v] += work.delta[v] - entry.value
            work.delta[v] = entry.value
        elif entry.action == REMOVE_CLUSTER:
            work.active[list(entry.target)] = False
            work.removed_clusters.append(tuple(entry.target))
        else:
            raise ValueError(f"Unknown trace action {entry.action!r}")
    return work


@dataclass
class KernelStats:
    """Size of a reduced instance next to the kernel bounds for its parameters.

    The bounds are reported for comparison only; a reduced instance can exceed
    them (see DESIGN.md).
    """
    vertices: int
    edges: int
    max_degree: int
    removed_clusters: int
    residual_k: Optional[int]
    degree_bound: int
    vertex_bound: Optional[int]
    edge_bound: Optional[int]

    @property
    def within_vertex_bound(self) -> Optional[bool]:
        return None if self.vertex_bound is None else self.vertices <= self.vertex_bound

    @property
    def within_edge_bound(self) -> Optional[bool]:
        return None if self.edge_bound is None else self.edges <= self.edge_bound

    def as_lines(self):
        yield f"kernel vertices {self.vertices} edges {self.edges} max-degree {self.max_degree}"
        yield f"kernel removed-clusters {self.removed_clusters} residual-k {self.residual_k}"
        yield f"kernel degree-bound {self.degree_bound} vertex-bound {self.vertex_bound} edge-bound {self.edge_bound}"


def kernel_stats(inst: AnnotatedInstance) -> KernelStats:
    a, d = inst.params.a, inst.params.d
    adj = inst.adjacency()
    degrees = adj.sum(axis=1)
    k = inst.residual_k
    vertex_bound = edge_bound = None
    if k is not None:
        cap = inst.params.clique_cap
        vertex_bound = (5 * k * cap) // 2
        edge_bound = (5 * k * cap * (a + 3 * d)) // 4
    return KernelStats(
        vertices=int(inst.active.sum()),
        edges=int(np.triu(adj, 1).sum()),
        max_degree=int(degrees.max()) if inst.n else 0,
        removed_clusters=len(inst.removed_clusters),
        residual_k=k,
        degree_bound=a + 3 * d,
        vertex_bound=vertex_bound,
        edge_bound=edge_bound,
    )
