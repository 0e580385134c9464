"""Maximum matchings, their enumeration, and Sterboul flower/posy certificates.

Maximum-cardinality matchings come from networkx's blossom implementation;
maximality is certified independently by :func:`find_augmenting_path`, an
exhaustive search over alternating paths (exact by Berge's theorem).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import get_settings
from .errors import CapExceededError, InvalidGraphError, NotMaximumMatchingError
from .graph import Cycle, Edge, Graph, VertexSet, cycle_edges, enumerate_odd_cycles, is_cycle_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Matching:
    """Pairwise disjoint edges with the involution view ``mate``."""

    n: int
    edges: Tuple[Edge, ...]
    mate: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mate = list(range(self.n))
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraphError(f"invalid matching edge ({u}, {v})")
            if mate[u] != u or mate[v] != v:
                raise InvalidGraphError(f"matching edges share a vertex at ({u}, {v})")
            mate[u], mate[v] = v, u
        object.__setattr__(self, "mate", tuple(mate))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Matching":
        return cls(n, tuple(sorted((min(e), max(e)) for e in edges)))

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def exposed(self) -> VertexSet:
        return tuple(v for v in range(self.n) if self.mate[v] == v)

    @property
    def deficiency(self) -> int:
        return self.n - 2 * self.size

    def partner(self, v: int) -> int:
        return self.mate[v]

    def is_matched_edge(self, u: int, v: int) -> bool:
        return u != v and self.mate[u] == v

    def restrict(self, vertices: Iterable[int]) -> List[Edge]:
        inside = set(vertices)
        return [e for e in self.edges if e[0] in inside and e[1] in inside]


def is_matching_of(G: Graph, M: Matching) -> bool:
    return M.n == G.n and all(G.has_edge(u, v) for u, v in M.edges)


def maximum_matching(G: Graph, verify: bool = False) -> Matching:
    """Maximum-cardinality matching; ``verify`` re-checks it by augmenting-path search."""

    pairs = nx.max_weight_matching(G.to_networkx(), maxcardinality=True)
    M = Matching.from_edges(G.n, pairs)
    if verify:
        path = find_augmenting_path(G, M)
        if path is not None:
            raise NotMaximumMatchingError(path)
    return M


def matching_number(G: Graph) -> int:
    return len(nx.max_weight_matching(G.to_networkx(), maxcardinality=True))


def deficiency(G: Graph) -> int:
    return G.n - 2 * matching_number(G)


def find_augmenting_path(G: Graph, M: Matching) -> Optional[Tuple[int, ...]]:
    """Exhaustive search for an M-augmenting path; ``None`` certifies maximality."""

    mate = M.mate
    path: List[int] = []
    on_path = set()

    def extend(v: int) -> Optional[Tuple[int, ...]]:
        for u in G.adjacency[v]:
            if u in on_path or mate[v] == u:
                continue
            if mate[u] == u:
                return tuple(path) + (u,)
            w = mate[u]
            if w in on_path:
                continue
            path.extend((u, w))
            on_path.update((u, w))
            found = extend(w)
            if found:
                return found
            path.pop()
            path.pop()
            on_path.difference_update((u, w))
        return None

    for root in M.exposed:
        path[:] = [root]
        on_path.clear()
        on_path.add(root)
        found = extend(root)
        if found:
            return found
    return None


def all_maximum_matchings(G: Graph, cap: Optional[int] = None) -> List[Matching]:
    """Every maximum matching exactly once, sorted by edge tuple.

    The search branches on the least vertex that still has a neighbour: either
    it is matched to one of those neighbours or it stays exposed. Branches that
    can no longer reach the matching number are pruned by a blossom call on
    the remaining vertices.
    """

    cap = get_settings().matching_cap if cap is None else cap
    H = G.to_networkx()
    target = matching_number(G)
    memo: Dict[int, int] = {}
    results: List[Tuple[Edge, ...]] = []

    def capacity(alive: int) -> int:
        if alive not in memo:
            nodes = [v for v in range(G.n) if alive >> v & 1]
            memo[alive] = len(nx.max_weight_matching(H.subgraph(nodes), maxcardinality=True))
        return memo[alive]

    def search(alive: int, chosen: List[Edge], need: int) -> None:
        if need == 0:
            results.append(tuple(sorted(chosen)))
            if len(results) > cap:
                raise CapExceededError("all_maximum_matchings", cap)
            return
        v = next((x for x in range(G.n) if alive >> x & 1 and G.masks[x] & alive), None)
        if v is None or capacity(alive) < need:
            return
        for u in G.adjacency[v]:
            if alive >> u & 1:
                chosen.append((v, u))
                search(alive & ~(1 << v) & ~(1 << u), chosen, need - 1)
                chosen.pop()
        search(alive & ~(1 << v), chosen, need)

    search(G.full_mask, [], target)
    return [Matching(G.n, edges) for edges in sorted(results)]


# ---------------------------------------------------------------------------
# Alternating paths, blossoms, flowers and posies


def classify_alternating_path(path: Sequence[int], M: Matching) -> Optional[str]:
    """Return ``"mm"``, ``"nn"``, ``"mn"`` or ``"nm"``; ``None`` if not alternating."""

    if len(path) < 2:
        return None
    flags = [M.is_matched_edge(path[i], path[i + 1]) for i in range(len(path) - 1)]
    if any(flags[i] == flags[i + 1] for i in range(len(flags) - 1)):
        return None
    return ("m" if flags[0] else "n") + ("m" if flags[-1] else "n")


def blossom_base(cycle: Sequence[int], M: Matching) -> Optional[int]:
    """Base of ``cycle`` as an M-blossom, or ``None`` if it is not one.

    The base is the unique cycle vertex incident to no matched cycle edge; it
    may still be matched through a stem edge.
    """

    length = len(cycle)
    if length % 2 == 0:
        return None
    matched = sum(1 for u, v in cycle_edges(cycle) if M.is_matched_edge(u, v))
    if matched != (length - 1) // 2:
        return None
    for i, v in enumerate(cycle):
        if M.mate[v] not in (cycle[i - 1], cycle[(i + 1) % length]):
            return v
    return None


@dataclass(frozen=True)
class FlowerCert:
    blossom: Cycle
    base: int
    stem: Tuple[int, ...]  # vertex sequence from base to root; (base,) for the empty stem
    root: int

    @property
    def stem_length(self) -> int:
        return len(self.stem) - 1

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.blossom) | set(self.stem)))


@dataclass(frozen=True)
class PosyCert:
    blossom_a: Cycle
    blossom_b: Cycle
    path: Tuple[int, ...]  # from the base of blossom_a to the base of blossom_b


Certificate = Union[FlowerCert, PosyCert]


def iter_stems(G: Graph, M: Matching, blossom: Sequence[int], base: int):
    """Yield every M-stem from ``base`` in lexicographic order."""

    mate = M.mate
    if mate[base] == base:
        yield (base,)
        return
    first = mate[base]
    if first in blossom:
        return
    path = [base, first]
    visited = set(blossom) | {first}

    def extend(x: int):
        for y in G.adjacency[x]:
            if y in visited:
                continue
            if mate[y] == y:
                yield tuple(path) + (y,)
                continue
            z = mate[y]
            if z in visited:
                continue
            path.extend((y, z))
            visited.update((y, z))
            yield from extend(z)
            path.pop()
            path.pop()
            visited.difference_update((y, z))

    yield from extend(first)


def _least_mm_path(G: Graph, M: Matching, start: int, end: int, forbidden: set) -> Optional[Tuple[int, ...]]:
    mate = M.mate
    first = mate[start]
    if first == start:
        return None
    if first == end:
        return (start, end)
    if first in forbidden:
        return None
    path = [start, first]
    visited = set(forbidden) | {first}

    def extend(x: int) -> Optional[Tuple[int, ...]]:
        for y in G.adjacency[x]:
            if y in visited or mate[y] == y:
                continue
            z = mate[y]
            if z == end:
                return tuple(path) + (y, z)
            if z in visited:
                continue
            path.extend((y, z))
            visited.update((y, z))
            found = extend(z)
            if found:
                return found
            path.pop()
            path.pop()
            visited.difference_update((y, z))
        return None

    return extend(first)


def sterboul_certificate(
    G: Graph,
    M: Matching,
    cycle_cap: Optional[int] = None,
    check_maximum: bool = True,
) -> Optional[Certificate]:
    """Least M-flower, else least M-posy, else ``None``.

    Blossoms are tried in canonical odd-cycle order (length, then vertices);
    stems and posy paths in lexicographic order.
    """

    if not is_matching_of(G, M):
        raise InvalidGraphError("M is not a matching of G")
    if check_maximum:
        path = find_augmenting_path(G, M)
        if path is not None:
            raise NotMaximumMatchingError(path)
    blossoms = []
    for cycle in enumerate_odd_cycles(G, cap=cycle_cap):
        base = blossom_base(cycle, M)
        if base is not None:
            blossoms.append((cycle, base))
    for cycle, base in blossoms:
        stem = next(iter_stems(G, M, cycle, base), None)
        if stem is not None:
            return FlowerCert(blossom=cycle, base=base, stem=stem, root=stem[-1])
    for i, (cycle_a, base_a) in enumerate(blossoms):
        for cycle_b, base_b in blossoms[i + 1:]:
            if base_a == base_b:
                continue
            path = _least_mm_path(G, M, base_a, base_b, set(cycle_a) | set(cycle_b))
            if path is not None:
                return PosyCert(blossom_a=cycle_a, blossom_b=cycle_b, path=path)
    return None


def _blossom_violations(G: Graph, M: Matching, cycle: Sequence[int], base: int, label: str) -> List[str]:
    problems = []
    if not is_cycle_of(G, cycle) or len(cycle) % 2 == 0:
        return [f"{label} {list(cycle)} is not an odd cycle of G"]
    if blossom_base(cycle, M) is None:
        problems.append(f"{label} does not carry (len-1)/2 matched edges")
    elif blossom_base(cycle, M) != base:
        problems.append(f"{label} base {base} is not the vertex missed by the matched cycle edges")
    return problems


def validate_flower(G: Graph, M: Matching, cert: FlowerCert) -> List[str]:
    """Re-check every flower invariant; returns the list of violations."""

    problems = _blossom_violations(G, M, cert.blossom, cert.base, "blossom")
    stem = cert.stem
    if not stem or stem[0] != cert.base or stem[-1] != cert.root:
        problems.append("stem must run from the base to the root")
        return problems
    if len(set(stem)) != len(stem):
        problems.append("stem repeats a vertex")
    if any(not G.has_edge(stem[i], stem[i + 1]) for i in range(len(stem) - 1)):
        problems.append("stem uses a non-edge")
    if (len(stem) - 1) % 2:
        problems.append("stem has odd length")
    if M.mate[cert.root] != cert.root:
        problems.append(f"root {cert.root} is matched")
    if set(stem) & set(cert.blossom) != {cert.base}:
        problems.append("stem meets the blossom outside the base")
    if len(stem) > 1:
        kind = classify_alternating_path(stem, M)
        if kind != "mn":
            problems.append(f"stem is not an mn-alternating path (got {kind})")
    return problems


def validate_posy(G: Graph, M: Matching, cert: PosyCert) -> List[str]:
    path = cert.path
    base_a = path[0] if path else -1
    base_b = path[-1] if path else -1
    problems = _blossom_violations(G, M, cert.blossom_a, base_a, "blossom A")
    problems += _blossom_violations(G, M, cert.blossom_b, base_b, "blossom B")
    if base_a == base_b:
        problems.append("blossoms share their base")
    if len(path) < 2 or len(set(path)) != len(path):
        problems.append("path must be simple with at least one edge")
        return problems
    if any(not G.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1)):
        problems.append("path uses a non-edge")
    if classify_alternating_path(path, M) != "mm":
        problems.append("path is not an mm-alternating path")
    inner = set(path[1:-1])
    if inner & (set(cert.blossom_a) | set(cert.blossom_b)):
        problems.append("path has internal vertices inside a blossom")
    return problems


def is_koenig_egervary(G: Graph) -> bool:
    from .independence import alpha

    return alpha(G).size + matching_number(G) == G.n
