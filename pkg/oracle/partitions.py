"""
Brute-force reference solver: enumerate every vertex partition.

Only meant for small graphs; it is the ground truth the reduction rules and
the search-tree solvers are tested against.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.instance import AnnotatedInstance, Edit, Pair, PairState, Params

logger = logging.getLogger(__name__)

ORACLE_MAX_VERTICES = 12

Partition = List[Tuple[int, ...]]


@dataclass
class OracleResult:
    feasible: bool
    min_cost: Optional[int] = None
    witnesses: List[Partition] = field(default_factory=list)


def restricted_growth_strings(n: int) -> Iterator[List[int]]:
    """Every set partition of 0..n-1 as a block label per vertex, first occurrence in order."""
    if n == 0:
        yield []
        return

    def extend(prefix: List[int], top: int) -> Iterator[List[int]]:
        if len(prefix) == n:
            yield prefix
            return
        for label in range(top + 2):
            yield from extend(prefix + [label], max(top, label))

    yield from extend([0], 0)


def blocks_of(labels: Sequence[int]) -> Partition:
    blocks: Dict[int, List[int]] = {}
    for vertex, label in enumerate(labels):
        blocks.setdefault(label, []).append(vertex)
    return [tuple(members) for _, members in sorted(blocks.items())]


def _vector(n: int, default: int, values) -> np.ndarray:
    if values is None:
        return np.full(n, default, dtype=np.int64)
    if isinstance(values, dict):
        vector = np.full(n, default, dtype=np.int64)
        for v, x in values.items():
            vector[v] = x
        return vector
    return np.asarray(values, dtype=np.int64)


def oracle_minimum(
    n: int,
    edges: Iterable[Pair],
    params: Params,
    alpha=None,
    delta=None,
    annotations: Optional[Dict[Pair, PairState]] = None,
) -> OracleResult:
    """Minimum edit cost over all partitions meeting the size, budget and k limits.

    ``alpha``/``delta`` are per-vertex overrides (dict or full sequence).
    ``annotations`` pins pairs: PERMANENT pairs share a block, FORBIDDEN pairs do not.
    """
    if n > ORACLE_MAX_VERTICES:
        raise ValueError(f"Oracle enumerates partitions of at most {ORACLE_MAX_VERTICES} vertices, got {n}")
    if n == 0:
        return OracleResult(True, 0, [[]])

    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        adj[u, v] = adj[v, u] = True
    alpha_vec = _vector(n, params.a, alpha)
    delta_vec = _vector(n, params.d, delta)
    together = np.zeros((n, n), dtype=bool)
    apart = np.zeros((n, n), dtype=bool)
    for (u, v), state in (annotations or {}).items():
        target = together if state is PairState.PERMANENT else apart if state is PairState.FORBIDDEN else None
        if target is not None:
            target[u, v] = target[v, u] = True
    off_diagonal = ~np.eye(n, dtype=bool)

    best: Optional[int] = None
    witnesses: List[Partition] = []
    for labels in restricted_growth_strings(n):
        label = np.asarray(labels)
        same = (label[:, None] == label[None, :]) & off_diagonal
        if (apart & same).any() or (together & ~same).any():
            continue
        if np.bincount(label).min() < params.s:
            continue
        additions = same & ~adj
        deletions = adj & ~same
        if (additions.sum(axis=1) > alpha_vec).any() or (deletions.sum(axis=1) > delta_vec).any():
            continue
        cost = int(additions.sum() + deletions.sum()) // 2
        if params.k is not None and cost > params.k:
            continue
        if best is None or cost < best:
            best, witnesses = cost, [blocks_of(labels)]
        elif cost == best:
            witnesses.append(blocks_of(labels))

    if best is None:
        return OracleResult(False)
    return OracleResult(True, best, witnesses)


def script_for_partition(n: int, edges: Iterable[Pair], partition: Partition) -> List[Edit]:
    """Edits turning the graph into the clustering ``partition``, deletions first."""
    label = {v: i for i, block in enumerate(partition) for v in block}
    present = {tuple(sorted(e)) for e in edges}
    deletions = [Edit.delete(u, v) for u, v in sorted(present) if label[u] != label[v]]
    additions = [
        Edit.add(u, v)
        for block in partition
        for i, u in enumerate(block)
        for v in block[i + 1:]
        if (u, v) not in present
    ]
    return deletions + sorted(additions)


def oracle_for_instance(inst: AnnotatedInstance) -> OracleResult:
    """Oracle on the active part of an annotated instance, with its residual budgets.

    Witness partitions are returned in the instance's own vertex ids.
    """
    vertices = inst.vertices()
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[v]) for u, v in inst.current_edges() if u in index and v in index]
    annotations = {}
    for i, u in enumerate(vertices):
        for v in vertices[i + 1:]:
            state = inst.state(u, v)
            if state in (PairState.PERMANENT, PairState.FORBIDDEN):
                annotations[(index[u], index[v])] = state
    params = inst.params.model_copy(update={"k": inst.residual_k})
    result = oracle_minimum(
        len(vertices),
        edges,
        params,
        alpha=[int(inst.alpha[v]) for v in vertices],
        delta=[int(inst.delta[v]) for v in vertices],
        annotations=annotations,
    )
    result.witnesses = [[tuple(vertices[i] for i in block) for block in w] for w in result.witnesses]
    return result
