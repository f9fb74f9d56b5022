"""
Data reduction rules for multi-parameterized cluster editing.

Rules are grouped as the fixpoint driver applies them:

    base            1-3    budget checks, zero-budget consequences
    triple          4-5    closure of permanent/forbidden annotations
    common-neighbor 6-8    forced joins and separations from neighborhoods
    cluster-size    9-12   consequences of the minimum cluster size s
    permanent-clique 13-15 removing, joining and detaching around permanent cliques
    isolated-clique 16-17  global-budget rules on isolated cliques

Every group function mutates the given instance in place and runs its rules
to exhaustion. Within one pass a rule evaluates its condition on a snapshot,
then applies the collected triggers in lexicographic order, re-checking each
one against the current instance first.
"""
import logging
import math
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from core.instance import (
    AnnotatedInstance,
    Edit,
    EditKind,
    NoInstance,
    PairState,
    active_components,
    apply_edit,
)
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


@dataclass
class Reduced:
    instance: AnnotatedInstance
    applied: int = 0
    budget_sensitive: bool = False

    @property
    def changed(self) -> bool:
        return self.applied > 0


ReductionOutcome = Union[Reduced, NoInstance]


def _pairs(mask: np.ndarray) -> List[Tuple[int, int]]:
    rows, cols = np.nonzero(np.triu(mask, 1))
    return list(zip(rows.tolist(), cols.tolist()))


class RuleEngine:
    """Applies rules to one instance and keeps count of what changed."""

    def __init__(self, inst: AnnotatedInstance, trace: Optional[RuleTrace] = None):
        self.inst = inst
        self.trace = trace
        self.applied = 0
        self.budget_sensitive = False

    # -- primitive actions -------------------------------------------------

    def _record(self, rule: int, target, action: str, value: Optional[int] = None) -> None:
        self.applied += 1
        if self.trace is not None:
            self.trace.append(TraceEntry(rule, tuple(int(x) for x in target), action, value))

    def _edit(self, rule: int, edit: Edit) -> Optional[NoInstance]:
        self._record(rule, edit.pair, ADD if edit.kind is EditKind.ADD else DELETE)
        outcome = apply_edit_checked(self.inst, edit)
        if outcome is not None:
            return replace(outcome, detail=f"{outcome.detail} (forced by rule{rule})")
        return None

    def keep(self, rule: int, u: int, v: int) -> Optional[NoInstance]:
        """Make u-v a permanent edge, adding it when missing."""
        state = self.inst.state(u, v)
        if state is PairState.PERMANENT:
            return None
        if state is PairState.FORBIDDEN:
            return NoInstance(f"rule{rule}", f"pair {u}-{v} must be joined but is forbidden")
        if state is PairState.EDGE:
            self.inst.set_state(u, v, PairState.PERMANENT)
            self._record(rule, (u, v), PERMANENT)
            return None
        return self._edit(rule, Edit.add(u, v))

    def cut(self, rule: int, u: int, v: int) -> Optional[NoInstance]:
        """Make u-v a forbidden non-edge, deleting it when present."""
        state = self.inst.state(u, v)
        if state is PairState.FORBIDDEN:
            return None
        if state is PairState.PERMANENT:
            return NoInstance(f"rule{rule}", f"pair {u}-{v} must be separated but is permanent")
        if state is PairState.NON_EDGE:
            self.inst.set_state(u, v, PairState.FORBIDDEN)
            self._record(rule, (u, v), FORBID)
            return None
        return self._edit(rule, Edit.delete(u, v))

    def remove_cluster(self, rule: int, members: Sequence[int]) -> None:
        self.inst.active[list(members)] = False
        self.inst.removed_clusters.append(tuple(members))
        self._record(rule, members, REMOVE_CLUSTER)

    # -- base rules ----------------------------------------------------------

    def rule1(self) -> Optional[NoInstance]:
        inst = self.inst
        if inst.residual_k is not None and inst.residual_k < 0:
            return NoInstance("rule1", "global budget is negative", budget_limited=True)
        negative = np.flatnonzero(inst.active & ((inst.alpha < 0) | (inst.delta < 0)))
        if negative.size:
            return NoInstance("rule1", f"negative budget at vertex {negative[0]}")
        return None

    def rule2(self) -> Optional[NoInstance]:
        inst = self.inst
        for v in np.flatnonzero(inst.active & (inst.delta == 0)).tolist():
            closed = [v] + np.flatnonzero(inst.adjacency()[v]).tolist()
            for x, y in combinations(sorted(closed), 2):
                failure = self.keep(2, x, y)
                if failure:
                    return failure
        return None

    def rule3(self) -> Optional[NoInstance]:
        inst = self.inst
        for u in np.flatnonzero(inst.active & (inst.alpha == 0)).tolist():
            row = (inst.states[u] == PairState.NON_EDGE) & inst.active
            row[u] = False
            for w in np.flatnonzero(row).tolist():
                failure = self.cut(3, u, w)
                if failure:
                    return failure
        return None

    # -- triple rules --------------------------------------------------------

    def rule4(self) -> Optional[NoInstance]:
        inst = self.inst
        perm = inst.state_mask(PairState.PERMANENT).astype(np.int64)
        closure = (perm @ perm) > 0
        for v, w in _pairs(closure & inst.pair_mask() & (inst.states != PairState.PERMANENT)):
            failure = self.keep(4, v, w)
            if failure:
                return failure
        return None

    def rule5(self) -> Optional[NoInstance]:
        inst = self.inst
        perm = inst.state_mask(PairState.PERMANENT).astype(np.int64)
        forbidden = inst.state_mask(PairState.FORBIDDEN).astype(np.int64)
        reach = (perm @ forbidden) > 0
        for v, w in _pairs((reach | reach.T) & inst.pair_mask() & (inst.states != PairState.FORBIDDEN)):
            failure = self.cut(5, v, w)
            if failure:
                return failure
        return None

    # -- common-neighbor rules -----------------------------------------------

    def _common(self) -> Tuple[np.ndarray, np.ndarray]:
        adj = self.inst.adjacency()
        counts = adj.astype(np.int64)
        return adj, counts @ counts

    def rule6(self) -> Optional[NoInstance]:
        inst = self.inst
        adj, common = self._common()
        limit = inst.delta[:, None] + inst.delta[None, :]
        for u, v in _pairs(inst.pair_mask() & ~adj & (common > limit)):
            adj = inst.adjacency()
            if adj[u, v] or np.count_nonzero(adj[u] & adj[v]) <= inst.delta[u] + inst.delta[v]:
                continue
            failure = self.keep(6, u, v)
            if failure:
                return failure
        return None

    def rule7(self) -> Optional[NoInstance]:
        inst = self.inst
        _, common = self._common()
        threshold = 2 * inst.params.d - 1
        for u, v in _pairs(inst.state_mask(PairState.EDGE) & (common >= threshold)):
            failure = self.keep(7, u, v)
            if failure:
                return failure
        return None

    def rule8(self) -> Optional[NoInstance]:
        inst = self.inst
        adj, common = self._common()
        limit = inst.params.a + inst.params.d
        exclusive = adj.sum(axis=1)[:, None] - common - adj
        candidates = (exclusive > limit) | (exclusive.T > limit)
        for u, v in _pairs(candidates & inst.pair_mask() & (inst.states != PairState.FORBIDDEN)):
            adj = inst.adjacency()
            only_u = np.count_nonzero(adj[u] & ~adj[v]) - int(adj[u, v])
            only_v = np.count_nonzero(adj[v] & ~adj[u]) - int(adj[u, v])
            if max(only_u, only_v) <= limit:
                continue
            failure = self.cut(8, u, v)
            if failure:
                return failure
        return None

    # -- cluster-size rules --------------------------------------------------

    def rule9(self) -> Optional[NoInstance]:
        inst = self.inst
        reach = inst.degrees() + inst.alpha
        short = np.flatnonzero(inst.active & (reach < inst.params.s - 1))
        if short.size:
            v = int(short[0])
            return NoInstance("rule9", f"vertex {v} can reach at most {reach[v] + 1} < {inst.params.s} members")
        return None

    def rule10(self) -> Optional[NoInstance]:
        inst = self.inst
        cap = inst.degrees() + inst.alpha - (inst.params.s - 1)
        for v in np.flatnonzero(inst.active & (inst.delta > cap)).tolist():
            inst.delta_trimmed[v] += inst.delta[v] - cap[v]
            inst.delta[v] = cap[v]
            self._record(10, (v,), CAP_DELTA, int(cap[v]))
        return None

    def rule11(self) -> Optional[NoInstance]:
        inst = self.inst
        if inst.params.s <= 2:
            return None
        _, common = self._common()
        need = inst.params.s - inst.alpha[:, None] - inst.alpha[None, :]
        for u, v in _pairs(inst.state_mask(PairState.NON_EDGE) & (common < need)):
            failure = self.cut(11, u, v)
            if failure:
                return failure
        return None

    def rule12(self) -> Optional[NoInstance]:
        inst = self.inst
        if inst.params.s <= 2:
            return None
        adj, common = self._common()
        need = inst.params.s - 2 * inst.params.a - 2
        for u, v in _pairs(adj & (common < need)):
            failure = self.cut(12, u, v)
            if failure:
                return failure
        return None

    # -- permanent-clique rules ----------------------------------------------

    def _permanent_cliques(self) -> List[Tuple[int, ...]]:
        perm = self.inst.state_mask(PairState.PERMANENT)
        graph = nx.from_numpy_array(perm.astype(np.int8))
        cliques = []
        for part in nx.connected_components(graph):
            members = sorted(part)
            size = len(members)
            if size >= 2 and perm[np.ix_(members, members)].sum() == size * (size - 1):
                cliques.append(tuple(members))
        return sorted(cliques)

    def _neighbors_in(self, clique: Tuple[int, ...]) -> np.ndarray:
        """Per-vertex count of neighbors in ``clique``; members and inactive vertices get -1."""
        counts = self.inst.adjacency()[:, list(clique)].sum(axis=1)
        counts[list(clique)] = -1
        counts[~self.inst.active] = -1
        return counts

    def rule13(self) -> Optional[NoInstance]:
        inst = self.inst
        cap = inst.params.clique_cap
        for members, is_clique in active_components(inst):
            if not is_clique or len(members) <= cap:
                continue
            if len(members) < inst.params.s:
                return NoInstance("rule13", f"isolated clique of {members[0]} is final but smaller than s")
            self.remove_cluster(13, members)
        return None

    def rule14(self) -> Optional[NoInstance]:
        inst = self.inst
        a, d = inst.params.a, inst.params.d
        for clique in self._permanent_cliques():
            counts = self._neighbors_in(clique)
            joiners = np.flatnonzero(counts > d).tolist()
            if not joiners:
                continue
            v = joiners[0]
            if len(clique) > a and counts[v] < len(clique) - a:
                return NoInstance("rule14", f"vertex {v} must both join and leave the clique of {clique[0]}")
            for member in clique:
                failure = self.keep(14, v, member)
                if failure:
                    return failure
            return None
        return None

    def rule15(self) -> Optional[NoInstance]:
        inst = self.inst
        a = inst.params.a
        for clique in self._permanent_cliques():
            if len(clique) <= a:
                continue
            counts = self._neighbors_in(clique)
            leavers = np.flatnonzero((counts > 0) & (counts < len(clique) - a)).tolist()
            if not leavers:
                continue
            v = leavers[0]
            adj = inst.adjacency()
            for member in clique:
                if adj[v, member]:
                    failure = self.cut(15, v, member)
                    if failure:
                        return failure
            return None
        return None

    # -- isolated-clique rules -----------------------------------------------

    def _isolated_cliques(self) -> List[Tuple[int, ...]]:
        return [members for members, is_clique in active_components(self.inst) if is_clique]

    def rule16(self) -> Optional[NoInstance]:
        inst = self.inst
        if inst.residual_k is None:
            return None
        small = sum(len(c) for c in self._isolated_cliques() if len(c) < inst.params.s)
        if small > 2 * inst.residual_k:
            return NoInstance(
                "rule16",
                f"{small} vertices in undersized isolated cliques need more than k={inst.residual_k} edits",
                budget_limited=True,
            )
        return None

    def rule17(self) -> Optional[NoInstance]:
        inst = self.inst
        k = inst.residual_k
        if k is None or inst.params.s <= 1:
            return None
        large = [c for c in self._isolated_cliques() if len(c) >= inst.params.s]
        if len(large) <= k:
            return None
        ranked = sorted(large, key=lambda c: (len(c), c[0]))
        for members in sorted(ranked[math.ceil(k / 2):]):
            self.remove_cluster(17, members)
        self.budget_sensitive = True
        return None


def apply_edit_checked(inst: AnnotatedInstance, edit: Edit) -> Optional[NoInstance]:
    outcome = apply_edit(inst, edit)
    return outcome if isinstance(outcome, NoInstance) else None


Rule = Callable[[RuleEngine], Optional[NoInstance]]


def run_rules(inst: AnnotatedInstance, rules: Sequence[Rule], trace: Optional[RuleTrace] = None) -> ReductionOutcome:
    """Apply ``rules`` exhaustively, restarting from the first whenever one fires."""
    engine = RuleEngine(inst, trace)
    index = 0
    while index < len(rules):
        before = engine.applied
        failure = rules[index](engine)
        if failure is not None:
            logger.debug("%s: %s", failure.reason, failure.detail)
            return failure.limited() if engine.budget_sensitive else failure
        index = 0 if engine.applied > before else index + 1
    return Reduced(inst, engine.applied, engine.budget_sensitive)


BASE_RULES = (RuleEngine.rule1, RuleEngine.rule2, RuleEngine.rule3)
TRIPLE_RULES = (RuleEngine.rule4, RuleEngine.rule5)
COMMON_NEIGHBOR_RULES = (RuleEngine.rule6, RuleEngine.rule7, RuleEngine.rule8)
CLUSTER_SIZE_RULES = (RuleEngine.rule9, RuleEngine.rule10, RuleEngine.rule11, RuleEngine.rule12)
PERMANENT_CLIQUE_RULES = (RuleEngine.rule13, RuleEngine.rule14, RuleEngine.rule15)
ISOLATED_CLIQUE_RULES = (RuleEngine.rule16, RuleEngine.rule17)


def apply_base_rules(inst: AnnotatedInstance, trace: Optional[RuleTrace] = None) -> ReductionOutcome:
    return run_rules(inst, BASE_RULES, trace)


def apply_triple_rules(inst: AnnotatedInstance, trace: Optional[RuleTrace] = None) -> ReductionOutcome:
    return run_rules(inst, TRIPLE_RULES, trace)


def apply_common_neighbor_rules(inst: AnnotatedInstance, trace: Optional[RuleTrace] = None) -> ReductionOutcome:
    return run_rules(inst, COMMON_NEIGHBOR_RULES, trace)


def apply_cluster_size_rules(inst: AnnotatedInstance, trace: Optional[RuleTrace] = None) -> ReductionOutcome:
    return run_rules(inst, CLUSTER_SIZE_RULES, trace)


def apply_permanent_clique_rules(inst: AnnotatedInstance, trace: Optional[RuleTrace] = None) -> ReductionOutcome:
    return run_rules(inst, PERMANENT_CLIQUE_RULES, trace)


def apply_isolated_clique_rules(inst: AnnotatedInstance, trace: Optional[RuleTrace] = None) -> ReductionOutcome:
    return run_rules(inst, ISOLATED_CLIQUE_RULES, trace)


RULE_GROUPS = (
    apply_base_rules,
    apply_triple_rules,
    apply_common_neighbor_rules,
    apply_cluster_size_rules,
    apply_permanent_clique_rules,
    apply_isolated_clique_rules,
)
