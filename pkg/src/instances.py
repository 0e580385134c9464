"""Seeded graph corpora for the property suites and the search harness.

All randomness derives from one master seed through :func:`split_seed`
(splitmix64), so instance ``i`` of a corpus is the same whatever order or
process it is generated in.
"""

import itertools
import logging
from typing import Iterator, Optional, Tuple

import networkx as nx
import numpy as np

from .errors import SizeGuardError
from .graph import Graph

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

# labelled enumeration: 2**15 edge sets at n = 6
EXHAUSTIVE_MAX_N = 6
# the networkx atlas stops at 7 vertices
ATLAS_MAX_N = 7


def splitmix64(state: int) -> int:
    z = (state + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def split_seed(master: int, index: int) -> int:
    """Seed of the ``index``-th child stream of ``master``."""

    return splitmix64((master + index * GOLDEN_GAMMA) & MASK64)


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices, in edge-bitmask order."""

    if n > EXHAUSTIVE_MAX_N:
        raise SizeGuardError("all_graphs", n, EXHAUSTIVE_MAX_N)
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, tuple(p for i, p in enumerate(pairs) if bits >> i & 1))


def all_graphs_up_to(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from all_graphs(n)


def atlas_graphs(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    """One graph per isomorphism class on ``min_n..max_n`` vertices."""

    if max_n > ATLAS_MAX_N:
        raise SizeGuardError("atlas_graphs", max_n, ATLAS_MAX_N)
    for H in nx.graph_atlas_g():
        order = H.number_of_nodes()
        if min_n <= order <= max_n:
            yield Graph.from_edges(order, H.edges())


def random_graph(seed: int, n: int, p: float) -> Graph:
    """G(n, p) from a numpy generator seeded with ``seed``."""

    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return Graph(n, tuple((int(u), int(v)) for u, v in np.argwhere(upper)))


def random_instance(seed: int, max_n: int, min_n: int = 1, p: Optional[float] = None) -> Graph:
    """Order and density drawn from ``seed``; the seed and ``max_n`` together replay the instance."""

    rng = np.random.default_rng(seed)
    n = int(rng.integers(min_n, max_n + 1))
    density = float(rng.uniform(0.15, 0.6)) if p is None else p
    return random_graph(int(rng.integers(0, 2**63)), n, density)


def random_graphs(
    master_seed: int,
    count: int,
    max_n: int,
    min_n: int = 1,
    p: Optional[float] = None,
) -> Iterator[Tuple[int, Graph]]:
    """``count`` random graphs with their per-instance seeds."""

    for i in range(count):
        seed = split_seed(master_seed, i)
        yield seed, random_instance(seed, max_n, min_n=min_n, p=p)
