"""
Seeded random instances: planted clusterings with noise, and G(n, p) graphs.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

import numpy as np

from core.instance import Pair

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlantedInstance:
    n: int
    edges: Tuple[Pair, ...]
    partition: Tuple[Tuple[int, ...], ...]
    flipped: Tuple[Pair, ...]


def planted_instance(cluster_sizes: Sequence[int], flips: int, seed: int) -> PlantedInstance:
    """Disjoint cliques of the given sizes with ``flips`` distinct pairs toggled.

    Flipped pairs are drawn without replacement from all vertex pairs in
    lexicographic order, so the same seed always yields the same graph.
    """
    if any(size < 1 for size in cluster_sizes):
        raise ValueError(f"Cluster sizes must be positive, got {list(cluster_sizes)}")
    n = int(sum(cluster_sizes))
    pairs: List[Pair] = list(combinations(range(n), 2))
    if not 0 <= flips <= len(pairs):
        raise ValueError(f"Cannot flip {flips} of {len(pairs)} pairs")

    partition = []
    start = 0
    for size in cluster_sizes:
        partition.append(tuple(range(start, start + size)))
        start += size
    label = {v: i for i, block in enumerate(partition) for v in block}

    rng = np.random.default_rng(seed)
    chosen = sorted(rng.choice(len(pairs), size=flips, replace=False).tolist()) if flips else []
    flipped = {pairs[i] for i in chosen}
    edges = tuple(
        (u, v) for u, v in pairs
        if (label[u] == label[v]) != ((u, v) in flipped)
    )
    logger.debug("Planted %d clusters on %d vertices with %d flips", len(partition), n, flips)
    return PlantedInstance(n, edges, tuple(partition), tuple(pairs[i] for i in chosen))


def random_instance(n: int, p: float, seed: int) -> Tuple[int, List[Pair]]:
    """Every vertex pair becomes an edge independently with probability p."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError(f"Need n >= 0 and 0 <= p <= 1, got n={n}, p={p}")
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(n), 2))
    draws = rng.random(len(pairs))
    return n, [pair for pair, draw in zip(pairs, draws) if draw < p]
