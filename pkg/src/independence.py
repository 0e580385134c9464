"""Independence number and the critical-set calculus.

``alpha`` is an exact branch and bound over vertex bitmasks. The critical
profile (d, d_I, ker, core, nucleus, diadem, corona) is computed from an
explicit table over all ``2**n`` vertex subsets, built with numpy, so every
value it reports is an enumeration oracle rather than a formula.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .config import get_settings
from .errors import HallConditionError, NotCriticalError, SizeGuardError
from .graph import Graph, VertexSet, from_mask, neighborhood, to_mask

logger = logging.getLogger(__name__)


class AlphaResult(NamedTuple):
    size: int
    witness: VertexSet


def _guard(stage: str, G: Graph, limit: int) -> None:
    if G.n > limit:
        raise SizeGuardError(stage, G.n, limit)


def _max_independent_size(G: Graph, candidates: int) -> int:
    """Exact maximum independent set size inside ``candidates`` (a bitmask)."""

    masks = G.masks
    best = 0

    def expand(P: int, size: int) -> None:
        nonlocal best
        while True:
            if P == 0:
                best = max(best, size)
                return
            if size + P.bit_count() <= best:
                return
            low_v, low_deg = -1, None
            high_v, high_deg = -1, -1
            rest = P
            while rest:
                bit = rest & -rest
                v = bit.bit_length() - 1
                rest ^= bit
                deg = (masks[v] & P).bit_count()
                if low_deg is None or deg < low_deg:
                    low_v, low_deg = v, deg
                if deg > high_deg:
                    high_v, high_deg = v, deg
            if low_deg <= 1:
                # a vertex of degree <= 1 always lies in some maximum independent set
                P &= ~masks[low_v] & ~(1 << low_v)
                size += 1
                continue
            expand(P & ~masks[high_v] & ~(1 << high_v), size + 1)
            P &= ~(1 << high_v)

    expand(candidates, 0)
    return best


def alpha(G: Graph, max_n: Optional[int] = None) -> AlphaResult:
    """``α(G)`` with the lexicographically least maximum independent set."""

    _guard("alpha", G, get_settings().alpha_max_n if max_n is None else max_n)
    size = _max_independent_size(G, G.full_mask)
    chosen: List[int] = []
    candidates = G.full_mask
    need = size
    for v in range(G.n):
        if need == 0:
            break
        if not candidates >> v & 1:
            continue
        rest = candidates & ~G.masks[v] & ~(1 << v)
        if 1 + _max_independent_size(G, rest) == need:
            chosen.append(v)
            need -= 1
            candidates = rest
        else:
            candidates &= ~(1 << v)
    return AlphaResult(size, tuple(chosen))


def core_corona(G: Graph, max_n: Optional[int] = None) -> Tuple[VertexSet, VertexSet]:
    """``core`` via ``α(G-v) = α-1`` and ``corona`` via ``1 + α(G-N[v]) = α``."""

    _guard("core_corona", G, get_settings().alpha_max_n if max_n is None else max_n)
    full = G.full_mask
    a = _max_independent_size(G, full)
    core = tuple(v for v in range(G.n) if _max_independent_size(G, full & ~(1 << v)) == a - 1)
    corona = tuple(
        v for v in range(G.n) if 1 + _max_independent_size(G, full & ~G.masks[v] & ~(1 << v)) == a
    )
    return core, corona


def is_independent(G: Graph, S: Iterable[int]) -> bool:
    mask = to_mask(S)
    return all(not (G.masks[v] & mask) for v in from_mask(mask))


def difference(G: Graph, X: Iterable[int]) -> int:
    """``d_G(X) = |X| - |N(X)|``."""

    X = G.check_vertices(X)
    return len(X) - len(neighborhood(G, X))


# ---------------------------------------------------------------------------
# Subset tables


class SubsetTable(NamedTuple):
    size: np.ndarray  # |X| for every subset mask X
    nbr: np.ndarray  # N(X) as a bitmask
    nbr_size: np.ndarray  # |N(X)|
    independent: np.ndarray  # bool, X independent


def subset_table(G: Graph, max_n: Optional[int] = None) -> SubsetTable:
    """Vectorised table over all ``2**n`` subsets of ``V(G)``."""

    _guard("subset_table", G, get_settings().subset_max_n if max_n is None else max_n)
    total = 1 << G.n
    size = np.zeros(total, dtype=np.int64)
    nbr = np.zeros(total, dtype=np.int64)
    for v in range(G.n):
        lo, hi = 1 << v, 1 << (v + 1)
        size[lo:hi] = size[:lo] + 1
        nbr[lo:hi] = nbr[:lo] | G.masks[v]
    nbr_size = np.zeros(total, dtype=np.int64)
    for v in range(G.n):
        nbr_size += (nbr >> v) & 1
    masks = np.arange(total, dtype=np.int64)
    independent = (nbr & masks) == 0
    return SubsetTable(size, nbr, nbr_size, independent)


def _lex_least(masks: Iterable[int]) -> VertexSet:
    return min(from_mask(int(m)) for m in masks)


def critical_difference(G: Graph, max_n: Optional[int] = None) -> int:
    """``d(G)``: maximum of ``|X| - |N(X)|`` over all subsets."""

    table = subset_table(G, max_n=max_n)
    return int((table.size - table.nbr_size).max())


def critical_independence_difference(G: Graph, max_n: Optional[int] = None) -> int:
    """``d_I(G)``: the same maximum restricted to independent sets."""

    table = subset_table(G, max_n=max_n)
    diff = table.size - table.nbr_size
    return int(diff[table.independent].max())


def independent_sets(G: Graph, max_n: Optional[int] = None) -> List[VertexSet]:
    table = subset_table(G, max_n=get_settings().oracle_max_n if max_n is None else max_n)
    return sorted(from_mask(int(m)) for m in np.flatnonzero(table.independent))


def maximum_independent_sets(G: Graph, max_n: Optional[int] = None) -> List[VertexSet]:
    """``Ω(G)`` by enumeration, in lexicographic order."""

    table = subset_table(G, max_n=get_settings().oracle_max_n if max_n is None else max_n)
    best = int(table.size[table.independent].max())
    hits = np.flatnonzero(table.independent & (table.size == best))
    return sorted(from_mask(int(m)) for m in hits)


def critical_independent_sets(G: Graph, max_n: Optional[int] = None) -> List[VertexSet]:
    table = subset_table(G, max_n=get_settings().oracle_max_n if max_n is None else max_n)
    diff = table.size - table.nbr_size
    d = int(diff[table.independent].max())
    hits = np.flatnonzero(table.independent & (diff == d))
    return sorted(from_mask(int(m)) for m in hits)


def critical_difference_subsets(G: Graph, max_n: Optional[int] = None) -> List[VertexSet]:
    """All subsets attaining ``d(G)``, independent or not."""

    table = subset_table(G, max_n=max_n)
    diff = table.size - table.nbr_size
    hits = np.flatnonzero(diff == diff.max())
    return sorted(from_mask(int(m)) for m in hits)


def is_critical_independent(G: Graph, I: Iterable[int], d: Optional[int] = None) -> bool:
    I = G.check_vertices(I)
    if not is_independent(G, I):
        return False
    if d is None:
        d = critical_difference(G)
    return difference(G, I) == d


@dataclass(frozen=True)
class CriticalProfile:
    alpha: int
    d: int
    d_independent: int
    ker: VertexSet
    core: VertexSet
    nucleus: VertexSet
    diadem: VertexSet
    corona: VertexSet
    max_independent_witness: VertexSet
    critical_witness: VertexSet
    max_critical_witness: VertexSet


def critical_profile(G: Graph, max_n: Optional[int] = None) -> CriticalProfile:
    """Oracle values of every critical-set invariant, from explicit enumeration."""

    table = subset_table(G, max_n=get_settings().oracle_max_n if max_n is None else max_n)
    diff = table.size - table.nbr_size
    d = int(diff.max())
    d_independent = int(diff[table.independent].max())

    all_masks = np.arange(1 << G.n, dtype=np.int64)
    critical = all_masks[table.independent & (diff == d_independent)]
    ker = int(np.bitwise_and.reduce(critical)) if critical.size else 0
    diadem = int(np.bitwise_or.reduce(critical))
    largest = int(table.size[critical].max())
    max_critical = critical[table.size[critical] == largest]
    nucleus = int(np.bitwise_and.reduce(max_critical))

    a = int(table.size[table.independent].max())
    maximum = all_masks[table.independent & (table.size == a)]
    core = int(np.bitwise_and.reduce(maximum))
    corona = int(np.bitwise_or.reduce(maximum))

    return CriticalProfile(
        alpha=a,
        d=d,
        d_independent=d_independent,
        ker=from_mask(ker),
        core=from_mask(core),
        nucleus=from_mask(nucleus),
        diadem=from_mask(diadem),
        corona=from_mask(corona),
        max_independent_witness=_lex_least(maximum),
        critical_witness=_lex_least(critical),
        max_critical_witness=_lex_least(max_critical),
    )


# ---------------------------------------------------------------------------
# Hall-type machinery


def _bipartite_matching(G: Graph, left: Sequence[int], right: Sequence[int]) -> dict:
    right_set = set(right)
    H = nx.Graph()
    H.add_nodes_from(("L", v) for v in left)
    H.add_nodes_from(("R", v) for v in right)
    H.add_edges_from(
        (("L", u), ("R", w)) for u in left for w in G.adjacency[u] if w in right_set
    )
    matched = nx.bipartite.hopcroft_karp_matching(H, top_nodes=[("L", v) for v in left])
    return {u: w for (side, u), (_, w) in matched.items() if side == "L"}


def hall_holds(G: Graph, left: Iterable[int], right: Iterable[int]) -> bool:
    """``|N(T) ∩ right| >= |T|`` for every ``T ⊆ left``, decided by a saturating matching."""

    left = G.check_vertices(left)
    right = G.check_vertices(right)
    return len(_bipartite_matching(G, left, right)) == len(left)


def matchable_into(G: Graph, I: Iterable[int], S: Iterable[int]) -> bool:
    """True when the independent set ``I`` can be matched into ``S``, ignoring ``I ∩ S``."""

    I = G.check_vertices(I)
    S = G.check_vertices(S)
    common = set(I) & set(S)
    return hall_holds(G, [v for v in I if v not in common], [v for v in S if v not in common])


def max_tight_set(G: Graph, a_part: Iterable[int], i_part: Iterable[int]) -> VertexSet:
    """Largest ``S ⊆ a_part`` with ``|N(S) ∩ i_part| = |S|``.

    Requires Hall's condition from ``a_part`` into ``i_part``. With a matching
    saturating ``a_part``, the answer is ``a_part`` minus every vertex reachable
    by an alternating path from an unmatched vertex of ``i_part``.
    """

    a_part = G.check_vertices(a_part)
    i_part = G.check_vertices(i_part)
    if set(a_part) & set(i_part):
        raise ValueError("a_part and i_part must be disjoint")
    if not a_part:
        return ()
    matched = _bipartite_matching(G, a_part, i_part)
    if len(matched) < len(a_part):
        raise HallConditionError(
            f"Hall's condition fails: only {len(matched)} of {len(a_part)} vertices can be matched"
        )
    owner = {w: u for u, w in matched.items()}
    a_set = set(a_part)
    reached = set()
    frontier = [w for w in i_part if w not in owner]
    seen_i = set(frontier)
    while frontier:
        w = frontier.pop()
        for u in G.adjacency[w]:
            if u in a_set and u not in reached:
                reached.add(u)
                nxt = matched[u]
                if nxt not in seen_i:
                    seen_i.add(nxt)
                    frontier.append(nxt)
    return tuple(v for v in a_part if v not in reached)


def ker_hall_check(G: Graph, I: Iterable[int], max_n: Optional[int] = None) -> bool:
    """``|S| < |N(S) ∩ I|`` for every nonempty ``S ⊆ N(I)``; true exactly when ``I = ker(G)``."""

    I = G.check_vertices(I)
    d = critical_difference(G, max_n=max_n)
    if not is_independent(G, I) or difference(G, I) != d:
        raise NotCriticalError(f"{list(I)} is not a critical independent set (d(G) = {d})")
    # critical independent sets satisfy Hall from N(I) into I, so a violation is a nonempty tight set
    return max_tight_set(G, neighborhood(G, I), I) == ()
