"""
Annotated instance model for multi-parameterized cluster editing.

An instance is a simple undirected graph on vertices 0..n-1 together with the
per-vertex addition budgets (alpha), deletion budgets (delta), the minimum
cluster size s and an optional global edit budget k. Every vertex pair carries
a PairState; edits performed so far are recorded in ``edit_log``.
"""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class InstanceError(ValueError):
    """Raised when an instance cannot be built from the given input."""


class EditError(ValueError):
    """Raised when an edit is applied to a pair in the wrong state."""


class Params(BaseModel):
    """Problem parameters. ``k`` is None in optimization mode."""
    model_config = ConfigDict(frozen=True)

    a: int = Field(..., ge=0, description="Maximum edge additions per vertex")
    d: int = Field(..., ge=0, description="Maximum edge deletions per vertex")
    s: int = Field(1, ge=1, description="Minimum cluster size")
    k: Optional[int] = Field(None, ge=0, description="Global edit budget")

    @property
    def clique_cap(self) -> int:
        return max(self.a, 2 * self.d)


class PairState(IntEnum):
    NON_EDGE = 0
    FORBIDDEN = 1
    EDGE = 2
    PERMANENT = 3

    @property
    def is_edge(self) -> bool:
        return self >= PairState.EDGE


class EditKind(str, Enum):
    ADD = "add"
    DELETE = "del"


@dataclass(frozen=True, order=True)
class Edit:
    """A single edge addition or deletion, stored with u < v."""
    kind: EditKind
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise EditError(f"Edit endpoints must differ, got {self.u} twice")
        if self.u > self.v:
            low, high = self.v, self.u
            object.__setattr__(self, "u", low)
            object.__setattr__(self, "v", high)

    @classmethod
    def add(cls, u: int, v: int) -> "Edit":
        return cls(EditKind.ADD, u, v)

    @classmethod
    def delete(cls, u: int, v: int) -> "Edit":
        return cls(EditKind.DELETE, u, v)

    @property
    def pair(self) -> Pair:
        return (self.u, self.v)

    def __str__(self) -> str:
        return f"{self.kind.value} {self.u} {self.v}"


@dataclass(frozen=True)
class NoInstance:
    """Certificate that an instance has no solution.

    ``budget_limited`` is set when the global budget k took part in the
    refutation, so a larger k might still admit a solution.
    """
    reason: str
    detail: str = ""
    budget_limited: bool = False

    def limited(self) -> "NoInstance":
        return self if self.budget_limited else replace(self, budget_limited=True)


@dataclass
class Budgets:
    alpha: np.ndarray
    delta: np.ndarray

    def copy(self) -> "Budgets":
        return Budgets(self.alpha.copy(), self.delta.copy())


@dataclass
class AnnotatedInstance:
    n: int
    params: Params
    states: np.ndarray
    budgets: Budgets
    initial_budgets: Budgets
    residual_k: Optional[int]
    original_edges: FrozenSet[Pair]
    edit_log: List[Edit] = field(default_factory=list)
    removed_clusters: List[Tuple[int, ...]] = field(default_factory=list)
    active: Optional[np.ndarray] = None
    delta_trimmed: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.active is None:
            self.active = np.ones(self.n, dtype=bool)
        if self.delta_trimmed is None:
            self.delta_trimmed = np.zeros(self.n, dtype=np.int64)

    def copy(self) -> "AnnotatedInstance":
        return AnnotatedInstance(
            n=self.n,
            params=self.params,
            states=self.states.copy(),
            budgets=self.budgets.copy(),
            initial_budgets=self.initial_budgets,
            residual_k=self.residual_k,
            original_edges=self.original_edges,
            edit_log=list(self.edit_log),
            removed_clusters=list(self.removed_clusters),
            active=self.active.copy(),
            delta_trimmed=self.delta_trimmed.copy(),
        )

    def with_budget(self, k: Optional[int]) -> "AnnotatedInstance":
        """Copy of this instance with global budget k counted from the original graph."""
        twin = self.copy()
        twin.params = self.params.model_copy(update={"k": k})
        twin.residual_k = None if k is None else k - len(self.edit_log)
        return twin

    @property
    def alpha(self) -> np.ndarray:
        return self.budgets.alpha

    @property
    def delta(self) -> np.ndarray:
        return self.budgets.delta

    def state(self, u: int, v: int) -> PairState:
        return PairState(int(self.states[u, v]))

    def set_state(self, u: int, v: int, state: PairState) -> None:
        self.states[u, v] = state
        self.states[v, u] = state

    def vertices(self) -> List[int]:
        return np.flatnonzero(self.active).tolist()

    def pair_mask(self) -> np.ndarray:
        """Boolean n x n mask of distinct pairs between active vertices."""
        mask = np.outer(self.active, self.active)
        np.fill_diagonal(mask, False)
        return mask

    def state_mask(self, state: PairState) -> np.ndarray:
        return (self.states == state) & self.pair_mask()

    def adjacency(self) -> np.ndarray:
        return (self.states >= PairState.EDGE) & self.pair_mask()

    def degrees(self) -> np.ndarray:
        return self.adjacency().sum(axis=1)

    def current_edges(self) -> List[Pair]:
        """Edges of the current graph over all vertices, removed clusters included."""
        rows, cols = np.nonzero(np.triu(self.states >= PairState.EDGE, 1))
        return list(zip(rows.tolist(), cols.tolist()))

    def to_graph(self, active_only: bool = False) -> nx.Graph:
        graph = nx.Graph()
        if active_only:
            graph.add_nodes_from(self.vertices())
            rows, cols = np.nonzero(np.triu(self.adjacency(), 1))
            graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
        else:
            graph.add_nodes_from(range(self.n))
            graph.add_edges_from(self.current_edges())
        return graph

    def alpha_overrides(self) -> Dict[int, int]:
        return {v: int(x) for v, x in enumerate(self.initial_budgets.alpha) if x != self.params.a}

    def delta_overrides(self) -> Dict[int, int]:
        return {v: int(x) for v, x in enumerate(self.initial_budgets.delta) if x != self.params.d}


def normalize_pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def _budget_vector(n: int, default: int, overrides: Optional[Dict[int, int]], label: str) -> np.ndarray:
    vector = np.full(n, default, dtype=np.int64)
    for vertex, value in (overrides or {}).items():
        if not 0 <= vertex < n:
            raise InstanceError(f"{label} override names vertex {vertex} outside 0..{n - 1}")
        if not 0 <= value <= default:
            raise InstanceError(f"{label} override {value} at vertex {vertex} outside 0..{default}")
        vector[vertex] = value
    return vector


def build_instance(
    n: int,
    edges: Iterable[Pair],
    params: Params,
    alpha_overrides: Optional[Dict[int, int]] = None,
    delta_overrides: Optional[Dict[int, int]] = None,
) -> AnnotatedInstance:
    """Build a fresh annotated instance with every pair unannotated."""
    if n < 0:
        raise InstanceError(f"Vertex count must be non-negative, got {n}")
    states = np.zeros((n, n), dtype=np.int8)
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InstanceError(f"Edge {u}-{v} names a vertex outside 0..{n - 1}")
        if u == v:
            raise InstanceError(f"Self-loop at vertex {u}")
        pair = normalize_pair(u, v)
        if pair in seen:
            raise InstanceError(f"Duplicate edge {pair[0]}-{pair[1]}")
        seen.add(pair)
        states[u, v] = states[v, u] = PairState.EDGE

    alpha = _budget_vector(n, params.a, alpha_overrides, "alpha")
    delta = _budget_vector(n, params.d, delta_overrides, "delta")
    budgets = Budgets(alpha, delta)
    logger.debug("Built instance with %d vertices and %d edges", n, len(seen))
    return AnnotatedInstance(
        n=n,
        params=params,
        states=states,
        budgets=budgets,
        initial_budgets=budgets.copy(),
        residual_k=params.k,
        original_edges=frozenset(seen),
    )


def pair_state(inst: AnnotatedInstance, u: int, v: int) -> PairState:
    if u == v:
        raise ValueError(f"pair_state needs two distinct vertices, got {u} twice")
    if not (0 <= u < inst.n and 0 <= v < inst.n):
        raise ValueError(f"Pair {u}-{v} is outside 0..{inst.n - 1}")
    return inst.state(u, v)


def apply_edit(inst: AnnotatedInstance, edit: Edit) -> Union[AnnotatedInstance, NoInstance]:
    """Apply ``edit`` in place and charge it to alpha/delta and k.

    Returns the instance, or NoInstance when the edit deletes a permanent
    edge or drives a budget negative.
    """
    u, v = edit.u, edit.v
    if v >= inst.n or u < 0:
        raise EditError(f"Edit {edit} names a vertex outside 0..{inst.n - 1}")
    state = inst.state(u, v)
    if edit.kind is EditKind.ADD:
        if state is not PairState.NON_EDGE:
            raise EditError(f"Cannot add pair {u}-{v} in state {state.name}")
        inst.set_state(u, v, PairState.PERMANENT)
        budget = inst.budgets.alpha
        label = "alpha"
    else:
        if state is PairState.PERMANENT:
            return NoInstance("contradiction", f"deletion of permanent edge {u}-{v}")
        if state is not PairState.EDGE:
            raise EditError(f"Cannot delete pair {u}-{v} in state {state.name}")
        inst.set_state(u, v, PairState.FORBIDDEN)
        budget = inst.budgets.delta
        label = "delta"

    budget[u] -= 1
    budget[v] -= 1
    inst.edit_log.append(edit)

    if inst.residual_k is not None:
        inst.residual_k -= 1
        if inst.residual_k < 0:
            return NoInstance("rule1", f"{edit} exceeds the global budget", budget_limited=True)
    if budget[u] < 0 or budget[v] < 0:
        vertex = u if budget[u] < 0 else v
        return NoInstance("rule1", f"{edit} exceeds {label} at vertex {vertex}")
    return inst


def find_conflict_triple(inst: AnnotatedInstance) -> Optional[Tuple[int, int, int]]:
    """Lexicographically smallest (u, v, w) with u-v and u-w edges and v, w non-adjacent.

    Only active vertices are considered; v < w.
    """
    adj = inst.adjacency()
    for u in range(inst.n):
        neighbors = np.flatnonzero(adj[u])
        for i, v in enumerate(neighbors[:-1]):
            rest = neighbors[i + 1:]
            missing = rest[~adj[v, rest]]
            if missing.size:
                return (u, int(v), int(missing[0]))
    return None


def _is_clique(graph: nx.Graph, members) -> bool:
    size = len(members)
    return graph.subgraph(members).number_of_edges() == size * (size - 1) // 2


def components(inst: AnnotatedInstance) -> Tuple[List[Tuple[int, ...]], bool]:
    """Connected components of the current graph and whether it is a cluster graph."""
    graph = inst.to_graph()
    parts = sorted(tuple(sorted(part)) for part in nx.connected_components(graph))
    return parts, all(_is_clique(graph, part) for part in parts)


def active_components(inst: AnnotatedInstance) -> List[Tuple[Tuple[int, ...], bool]]:
    """Components among active vertices, each paired with a clique flag."""
    graph = inst.to_graph(active_only=True)
    parts = sorted(tuple(sorted(part)) for part in nx.connected_components(graph))
    return [(part, _is_clique(graph, part)) for part in parts]


def undecided_pairs(inst: AnnotatedInstance) -> List[Pair]:
    """Active pairs that are neither permanent nor forbidden."""
    mask = np.triu(inst.pair_mask() & (
        (inst.states == PairState.NON_EDGE) | (inst.states == PairState.EDGE)), 1)
    rows, cols = np.nonzero(mask)
    return list(zip(rows.tolist(), cols.tolist()))
