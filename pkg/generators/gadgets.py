"""
Clause and variable gadgets, and the reduction from positive 1-in-3 SAT.

Every gadget uses (a, d) = (2, 1) and s = 1. In any solution a clause gadget
cuts the bridge edge leaving its K4 plus exactly one of its three stub
edges, and a variable gadget either splits its 4-cycle into two halves that
absorb the pendants (variable true) or completes the cycle to a K4 and cuts
every pendant off (variable false).
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from core.instance import AnnotatedInstance, Edit, EditKind, Pair, Params, build_instance
from generators.formula import Formula

logger = logging.getLogger(__name__)

GADGET_PARAMS = Params(a=2, d=1, s=1)

CLAUSE_SIZE = 6
VARIABLE_SIZE = 8

CLAUSE_COST = 5
TRUE_VARIABLE_COST = 8
FALSE_VARIABLE_COST = 6


@dataclass(frozen=True)
class GraphFragment:
    n: int
    edges: Tuple[Pair, ...]
    labels: Dict[str, int] = field(default_factory=dict)


def _clause_edges(base: int) -> List[Pair]:
    core = [(base + i, base + j) for i in range(4) for j in range(i + 1, 4)]
    return core + [(base + 3, base + 4), (base + 4, base + 5)]


def _variable_edges(base: int) -> List[Pair]:
    cycle = [(base + i, base + (i + 1) % 4) for i in range(4)]
    pendants = [(base + i, base + 4 + i) for i in range(4)]
    return sorted(tuple(sorted(e)) for e in cycle + pendants)


def clause_gadget() -> GraphFragment:
    """K4 on 0..3, bridge 3-4, connector c=5 and three stub neighbours x, y, z."""
    edges = _clause_edges(0) + [(5, 6), (5, 7), (5, 8)]
    return GraphFragment(9, tuple(edges), {"c": 5, "x": 6, "y": 7, "z": 8})


def variable_gadget() -> GraphFragment:
    """4-cycle 0-1-2-3 with pendant 4+i attached to cycle vertex i."""
    labels = {f"slot{i}": 4 + i for i in range(4)}
    return GraphFragment(VARIABLE_SIZE, tuple(_variable_edges(0)), labels)


@dataclass
class GadgetLayout:
    formula: Formula
    instance: AnnotatedInstance
    clause_vertex: List[int]
    var_slots: Dict[int, List[int]]
    clause_edges: List[List[Pair]]

    @property
    def params(self) -> Params:
        return self.instance.params

    def owner(self, pendant: int) -> int:
        for var, slots in self.var_slots.items():
            if pendant in slots:
                return var
        raise KeyError(pendant)


def build_sat_reduction(formula: Formula, k: Optional[int] = None) -> GadgetLayout:
    """Cluster editing instance that is solvable within the canonical cost iff ``formula`` is 1-in-3 satisfiable.

    Clause gadgets take vertices 0..6m-1, variable gadgets follow with eight
    vertices each. Each clause connector is wired to the next unused pendant
    of each of its variables, in clause order.
    """
    m = len(formula.clauses)
    edges: List[Pair] = []
    clause_vertex = []
    for index in range(m):
        base = CLAUSE_SIZE * index
        edges.extend(_clause_edges(base))
        clause_vertex.append(base + 5)

    var_slots: Dict[int, List[int]] = {}
    for var in range(formula.num_vars):
        base = CLAUSE_SIZE * m + VARIABLE_SIZE * var
        edges.extend(_variable_edges(base))
        var_slots[var] = [base + 4 + i for i in range(4)]

    next_slot = [0] * formula.num_vars
    clause_edges = []
    for index, clause in enumerate(formula.clauses):
        wired = []
        for var in clause:
            pendant = var_slots[var][next_slot[var]]
            next_slot[var] += 1
            wired.append((clause_vertex[index], pendant))
        edges.extend(wired)
        clause_edges.append(wired)

    n = CLAUSE_SIZE * m + VARIABLE_SIZE * formula.num_vars
    instance = build_instance(n, edges, GADGET_PARAMS.model_copy(update={"k": k}))
    logger.debug("SAT reduction: %d clauses, %d variables, %d vertices", m, formula.num_vars, n)
    return GadgetLayout(formula, instance, clause_vertex, var_slots, clause_edges)


def canonical_layout_cost(formula: Formula, assignment: Sequence[bool]) -> int:
    """Edits of the canonical solution for ``assignment``.

    Only meaningful for 1-in-3 satisfying assignments; every solution of the
    reduction costs exactly this much for the assignment it encodes.
    """
    true_count = sum(1 for value in assignment if value)
    false_count = formula.num_vars - true_count
    return CLAUSE_COST * len(formula.clauses) + TRUE_VARIABLE_COST * true_count + FALSE_VARIABLE_COST * false_count


def recover_assignment(layout: GadgetLayout, script: Sequence[Edit]) -> List[bool]:
    """A variable is true when one of its clause stub edges is deleted."""
    deleted = {edit.pair for edit in script if edit.kind is EditKind.DELETE}
    values = [False] * layout.formula.num_vars
    for wired in layout.clause_edges:
        for c, pendant in wired:
            if tuple(sorted((c, pendant))) in deleted:
                values[layout.owner(pendant)] = True
    return values
