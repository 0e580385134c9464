"""Exact adjacency determinants and the Sachs-subgraph expansion.

All arithmetic is on Python integers; numpy is used with ``dtype=object`` so
the Bareiss elimination never touches floating point.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import get_settings
from .errors import CapExceededError, RouteDisagreementError, SizeGuardError
from .graph import Cycle, Edge, Graph, VertexSet, canonical_cycle, from_mask, induced_subgraph
from .independence import critical_profile

logger = logging.getLogger(__name__)


def adjacency_matrix(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n), dtype=object)
    for u, v in G.edges:
        A[u, v] = 1
        A[v, u] = 1
    return A


def bareiss_determinant(matrix) -> int:
    """Fraction-free Gaussian elimination; every division is exact."""

    a = np.array(matrix, dtype=object)
    n = a.shape[0]
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i, k] != 0), None)
            if swap is None:
                return 0
            a[[k, swap]] = a[[swap, k]]
            sign = -sign
        pivot = a[k, k]
        a[k + 1:, k + 1:] = (a[k + 1:, k + 1:] * pivot - np.outer(a[k + 1:, k], a[k, k + 1:])) // prev
        a[k + 1:, k] = 0
        prev = pivot
    return sign * int(a[n - 1, n - 1])


def adjacency_determinant(G: Graph) -> int:
    return bareiss_determinant(adjacency_matrix(G))


# ---------------------------------------------------------------------------
# Sachs subgraphs


@dataclass(frozen=True)
class SachsSubgraph:
    k2_edges: Tuple[Edge, ...]
    cycles: Tuple[Cycle, ...]

    @property
    def p(self) -> int:
        return len(self.k2_edges) + len(self.cycles)

    @property
    def c(self) -> int:
        return len(self.cycles)

    @property
    def components(self) -> List[Tuple[int, ...]]:
        """Component vertex sets, sorted by least vertex."""

        comps = [tuple(e) for e in self.k2_edges] + [tuple(sorted(c)) for c in self.cycles]
        return sorted(comps)

    def to_dict(self) -> Dict[str, list]:
        return {"k2": [list(e) for e in self.k2_edges], "cycles": [list(c) for c in self.cycles]}


def _cycles_through(G: Graph, v: int, free: int) -> Iterator[Cycle]:
    """Cycles through ``v`` inside the vertex mask ``free``, each once."""

    path = [v]

    def extend(x: int, used: int):
        for y in G.adjacency[x]:
            if y == v and len(path) >= 3 and path[1] < path[-1]:
                yield canonical_cycle(path)
            elif free >> y & 1 and not used >> y & 1:
                path.append(y)
                yield from extend(y, used | (1 << y))
                path.pop()

    yield from extend(v, 1 << v)


def iter_sachs(G: Graph) -> Iterator[SachsSubgraph]:
    """Spanning Sachs subgraphs, covering the least uncovered vertex first."""

    k2: List[Edge] = []
    cycles: List[Cycle] = []

    def cover(free: int):
        if free == 0:
            yield SachsSubgraph(tuple(sorted(k2)), tuple(sorted(cycles)))
            return
        v = (free & -free).bit_length() - 1
        for u in G.adjacency[v]:
            if free >> u & 1:
                k2.append((v, u))
                yield from cover(free & ~(1 << v) & ~(1 << u))
                k2.pop()
        for cycle in _cycles_through(G, v, free):
            cycles.append(cycle)
            rest = free
            for w in cycle:
                rest &= ~(1 << w)
            yield from cover(rest)
            cycles.pop()

    yield from cover(G.full_mask)


def _guard(stage: str, G: Graph, max_n: Optional[int]) -> None:
    limit = get_settings().desk_max_n if max_n is None else max_n
    if G.n > limit:
        raise SizeGuardError(stage, G.n, limit)


def enumerate_sachs(G: Graph, cap: Optional[int] = None, max_n: Optional[int] = None) -> List[SachsSubgraph]:
    _guard("enumerate_sachs", G, max_n)
    cap = get_settings().sachs_cap if cap is None else cap
    found = []
    for S in iter_sachs(G):
        found.append(S)
        if len(found) > cap:
            raise CapExceededError("enumerate_sachs", cap)
    return found


def permutation_sign(S: SachsSubgraph, n: int) -> int:
    """``(-1)^(n - p(S))``, the sign of the permutations ``S`` stands for."""

    return -1 if (n - S.p) % 2 else 1


def sachs_weighted_sum(
    G: Graph,
    weight: Callable[[SachsSubgraph], int],
    cap: Optional[int] = None,
    max_n: Optional[int] = None,
) -> int:
    return sum(weight(S) * 2 ** S.c for S in enumerate_sachs(G, cap=cap, max_n=max_n))


def sachs_expansion(G: Graph, cap: Optional[int] = None, max_n: Optional[int] = None) -> int:
    """Determinant as a signed sum over Sachs subgraphs."""

    return sachs_weighted_sum(G, lambda S: permutation_sign(S, G.n), cap=cap, max_n=max_n)


# ---------------------------------------------------------------------------
# Existence: three independent routes


@dataclass(frozen=True)
class SachsExistence:
    exists: bool
    witness: Optional[SachsSubgraph] = None
    certificate: Optional[VertexSet] = None  # S with i(G - S) > |S|
    certificate_isolated: Optional[int] = None
    routes: Dict[str, bool] = field(default_factory=dict)


def tutte_violation(G: Graph, max_n: Optional[int] = None) -> Optional[Tuple[VertexSet, int]]:
    """Smallest, then lexicographically least, ``S`` with ``i(G-S) > |S|``."""

    limit = get_settings().subset_max_n if max_n is None else max_n
    if G.n > limit:
        raise SizeGuardError("tutte_violation", G.n, limit)
    total = 1 << G.n
    S = np.arange(total, dtype=np.int64)
    isolated = np.zeros(total, dtype=np.int64)
    size = np.zeros(total, dtype=np.int64)
    for v in range(G.n):
        outside = ((S >> v) & 1) == 0
        size += ~outside
        isolated += outside & ((np.int64(G.masks[v]) & ~S) == 0)
    bad = np.flatnonzero(isolated > size)
    if bad.size == 0:
        return None
    best = min(bad.tolist(), key=lambda m: (int(size[m]), from_mask(m)))
    return from_mask(best), int(isolated[best])


def has_sachs_subgraph(G: Graph, max_n: Optional[int] = None) -> SachsExistence:
    """Decide existence by enumeration, by the isolated-vertex condition and by ``ker(G) = ∅``.

    Raises :class:`RouteDisagreementError` if the three routes differ.
    """

    limit = get_settings().subset_max_n if max_n is None else max_n
    if G.n > limit:
        raise SizeGuardError("has_sachs_subgraph", G.n, limit)
    witness = next(iter_sachs(G), None)
    violation = tutte_violation(G, max_n=limit)
    ker_empty = critical_profile(G, max_n=limit).ker == ()
    routes = {"enumeration": witness is not None, "tutte": violation is None, "ker": ker_empty}
    if len(set(routes.values())) != 1:
        raise RouteDisagreementError(f"Sachs existence routes disagree: {routes}")
    return SachsExistence(
        exists=witness is not None,
        witness=witness,
        certificate=None if violation is None else violation[0],
        certificate_isolated=None if violation is None else violation[1],
        routes=routes,
    )


# ---------------------------------------------------------------------------
# Factorization over a BAB structure


@dataclass
class FactorizationReport:
    det: int
    block_dets: List[int]
    product: int
    sachs_checked: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def _factorize(
    G: Graph,
    blocks: Sequence[VertexSet],
    labels: Sequence[str],
    check_sachs: bool,
    cap: Optional[int],
    max_n: Optional[int],
) -> FactorizationReport:
    det = adjacency_determinant(G)
    dets = [adjacency_determinant(induced_subgraph(G, block)[0]) for block in blocks]
    product = 1
    for value in dets:
        product *= value
    report = FactorizationReport(det=det, block_dets=dets, product=product)
    if det != product:
        report.violations.append(f"det(G) = {det} but the block product is {product}")
    if check_sachs:
        owner = {v: i for i, block in enumerate(blocks) for v in block}
        for S in enumerate_sachs(G, cap=cap, max_n=max_n):
            report.sachs_checked += 1
            for comp in S.components:
                touched = {owner[v] for v in comp}
                if len(touched) > 1:
                    names = ", ".join(labels[i] for i in sorted(touched))
                    report.violations.append(f"Sachs component {list(comp)} crosses blocks {names}")
    return report


def check_det_factorization(
    G: Graph,
    structure,
    check_sachs: bool = True,
    cap: Optional[int] = None,
    max_n: Optional[int] = None,
    validate: bool = True,
) -> FactorizationReport:
    """``det(G) = det(B) · ∏ det(G_i)`` and no Sachs component crossing the blocks."""

    from .bab import validate_structure

    problems = validate_structure(G, structure) if validate else []
    if problems:
        return FactorizationReport(0, [], 0, violations=[f"invalid structure: {p}" for p in problems])
    blocks = [structure.b] + list(structure.parts)
    labels = ["B"] + [f"G{i + 1}" for i in range(len(structure.parts))]
    return _factorize(G, blocks, labels, check_sachs, cap, max_n)


def check_flower_factorization(G: Graph, check_sachs: bool = False) -> FactorizationReport:
    """The same factorization over the flower decomposition of an R-disjoint graph."""

    from .bab import flower_decomposition

    decomposition = flower_decomposition(G)
    blocks = [decomposition.b] + [r.vertices for r in decomposition.reach_sets]
    labels = ["B(G)"] + [f"R{i + 1}" for i in range(len(decomposition.reach_sets))]
    return _factorize(G, blocks, labels, check_sachs, None, None)
