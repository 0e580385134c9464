"""Immutable simple graphs on dense vertex indices, and the edge-list format.

Vertices are the integers ``0..n-1``. Every set-valued result is a
``VertexSet``: a sorted tuple of distinct indices, so that equality between
results is structural. Neighbourhoods are also kept as integer bitmasks for
the subset enumerations done elsewhere in the package.
"""

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import get_settings
from .errors import CapExceededError, GraphFormatError, InvalidGraphError, VertexRangeError

VertexSet = Tuple[int, ...]
Edge = Tuple[int, int]
Cycle = Tuple[int, ...]


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Return the canonical (sorted, deduplicated) form of ``vertices``."""

    return tuple(sorted(set(vertices)))


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> VertexSet:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; build it with :meth:`from_edges`."""

    n: int
    edges: Tuple[Edge, ...]
    adjacency: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraphError("vertex count must be non-negative")
        neighbours: List[List[int]] = [[] for _ in range(self.n)]
        previous = None
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexRangeError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {u}")
            if u > v or (previous is not None and (u, v) <= previous):
                raise InvalidGraphError("edges must be sorted, normalized (u < v) and distinct")
            previous = (u, v)
            neighbours[u].append(v)
            neighbours[v].append(u)
        adjacency = tuple(tuple(sorted(nb)) for nb in neighbours)
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "masks", tuple(to_mask(nb) for nb in adjacency))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        normalized = set()
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {u}")
            e = _normalize_edge(u, v)
            if e in normalized:
                raise InvalidGraphError(f"duplicate edge {e}")
            normalized.add(e)
        return cls(n, tuple(sorted(normalized)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> VertexSet:
        return tuple(range(self.n))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def check_vertices(self, vertices: Iterable[int]) -> VertexSet:
        """Canonicalize ``vertices`` after checking they lie in ``0..n-1``."""

        result = vertex_set(vertices)
        for v in result:
            if not 0 <= v < self.n:
                raise VertexRangeError(f"vertex {v} outside 0..{self.n - 1}")
        return result

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges) + [tuple(e) for e in edges])

    def to_networkx(self) -> nx.Graph:
        H = nx.Graph()
        H.add_nodes_from(range(self.n))
        H.add_edges_from(self.edges)
        return H


# ---------------------------------------------------------------------------
# Edge-list format


def parse_edge_list(text: Union[str, bytes]) -> Graph:
    """Parse the ``n m`` header followed by exactly ``m`` ``u v`` lines.

    Lines starting with ``#`` are comments. Errors carry the 1-based line
    number of the offending line.
    """

    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            line = text.count(b"\n", 0, exc.start) + 1
            raise GraphFormatError(f"invalid UTF-8 byte 0x{text[exc.start]:02x}", line) from None
    header: Optional[Tuple[int, int]] = None
    seen: Dict[Edge, int] = {}
    last_line = 0
    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            continue
        last_line = number
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise GraphFormatError("header must be 'n m'", number)
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise GraphFormatError(f"malformed header {line!r}", number) from None
            if n < 0 or m < 0:
                raise GraphFormatError("header values must be non-negative", number)
            header = (n, m)
            continue
        n, m = header
        if len(seen) == m:
            raise GraphFormatError(f"more than the declared {m} edge lines", number)
        if len(fields) != 2:
            raise GraphFormatError("edge line must be 'u v'", number)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(f"malformed edge {line!r}", number) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range 0..{n - 1} in {line!r}", number)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", number)
        edge = _normalize_edge(u, v)
        if edge in seen:
            raise GraphFormatError(f"duplicate edge {u} {v} (first at line {seen[edge]})", number)
        seen[edge] = number
    if header is None:
        raise GraphFormatError("missing 'n m' header", last_line or 1)
    if len(seen) != header[1]:
        raise GraphFormatError(f"expected {header[1]} edge lines, found {len(seen)}", last_line)
    return Graph(header[0], tuple(sorted(seen)))


def serialize_edge_list(G: Graph, comments: Iterable[str] = ()) -> str:
    """Canonical form: comments, header, then edges sorted with ``u < v``."""

    lines = [f"# {c}" for c in comments]
    lines.append(f"{G.n} {G.m}")
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> Graph:
    return parse_edge_list(Path(path).read_bytes())


def write_graph(path: Union[str, Path], G: Graph, comments: Iterable[str] = ()) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(serialize_edge_list(G, comments).encode("utf-8"))
    return path


# ---------------------------------------------------------------------------
# Neighbourhoods and induced subgraphs


def neighborhood(G: Graph, S: Iterable[int], closed: bool = False) -> VertexSet:
    """Open ``N(S)`` (which may meet ``S``) or closed ``N[S] = N(S) ∪ S``."""

    S = G.check_vertices(S)
    mask = 0
    for v in S:
        mask |= G.masks[v]
    if closed:
        mask |= to_mask(S)
    return from_mask(mask)


def boundary_vertices(G: Graph, S: Iterable[int]) -> VertexSet:
    """Vertices of ``S`` with a neighbour outside ``S``."""

    S = G.check_vertices(S)
    inside = to_mask(S)
    return tuple(v for v in S if G.masks[v] & ~inside)


def induced_subgraph(G: Graph, X: Iterable[int]) -> Tuple[Graph, VertexSet]:
    """Return ``G[X]`` relabelled to ``0..|X|-1`` and the new-to-old index map."""

    X = G.check_vertices(X)
    position = {old: new for new, old in enumerate(X)}
    edges = tuple(
        (position[u], position[v]) for u, v in G.edges if u in position and v in position
    )
    return Graph(len(X), tuple(sorted(edges))), X


def remove_vertices(G: Graph, S: Iterable[int]) -> Tuple[Graph, VertexSet]:
    removed = set(G.check_vertices(S))
    return induced_subgraph(G, [v for v in range(G.n) if v not in removed])


def relabel(G: Graph, mapping: Sequence[int]) -> Graph:
    """Rename vertex ``v`` to ``mapping[v]``; ``mapping`` must be a permutation."""

    if sorted(mapping) != list(range(G.n)):
        raise InvalidGraphError("relabel mapping must be a permutation of 0..n-1")
    return Graph.from_edges(G.n, ((mapping[u], mapping[v]) for u, v in G.edges))


def disjoint_union(graphs: Sequence[Graph]) -> Tuple[Graph, Tuple[int, ...]]:
    """Place the graphs side by side; returns the union and each one's offset."""

    offsets = []
    edges: List[Edge] = []
    total = 0
    for H in graphs:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in H.edges)
        total += H.n
    return Graph(total, tuple(sorted(edges))), tuple(offsets)


# ---------------------------------------------------------------------------
# Components, bipartition and cycles


def components(G: Graph) -> Tuple[List[VertexSet], int]:
    """Connected components (sorted by least vertex) and ``i(G)``."""

    comps = sorted(vertex_set(c) for c in nx.connected_components(G.to_networkx()))
    return comps, isolated_count(G)


def isolated_count(G: Graph) -> int:
    return sum(1 for v in range(G.n) if not G.adjacency[v])


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(components(G)[0]) == 1


def bipartition(G: Graph) -> Optional[Tuple[VertexSet, VertexSet]]:
    """Two-colour each component, its least vertex on the ``U`` side.

    Returns ``None`` as soon as an odd cycle is detected.
    """

    colour = [-1] * G.n
    for start in range(G.n):
        if colour[start] != -1:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in G.adjacency[v]:
                if colour[u] == -1:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return None
    U = tuple(v for v in range(G.n) if colour[v] == 0)
    W = tuple(v for v in range(G.n) if colour[v] == 1)
    return U, W


def canonical_cycle(cycle: Sequence[int]) -> Cycle:
    """Rotate to the least vertex and orient towards the smaller neighbour."""

    seq = list(cycle)
    i = seq.index(min(seq))
    seq = seq[i:] + seq[:i]
    if len(seq) > 2 and seq[-1] < seq[1]:
        seq = [seq[0]] + seq[:0:-1]
    return tuple(seq)


def cycle_edges(cycle: Sequence[int]) -> List[Edge]:
    return [_normalize_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def is_cycle_of(G: Graph, cycle: Sequence[int]) -> bool:
    """True when ``cycle`` is a simple cycle (length >= 3) of ``G``."""

    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return False
    if any(not 0 <= v < G.n for v in cycle):
        return False
    return all(G.has_edge(u, v) for u, v in cycle_edges(cycle))


@dataclass(frozen=True)
class CycleList:
    """Canonical cycles in (length, vertex sequence) order with parity flags."""

    cycles: Tuple[Cycle, ...]

    @property
    def odd(self) -> Tuple[bool, ...]:
        return tuple(len(c) % 2 == 1 for c in self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


def enumerate_cycles(G: Graph, cap: Optional[int] = None, odd_only: bool = False) -> CycleList:
    """All simple cycles of ``G`` once each, up to rotation and reflection."""

    cap = get_settings().cycle_cap if cap is None else cap
    found = set()
    for raw in nx.simple_cycles(G.to_networkx()):
        if len(raw) < 3 or (odd_only and len(raw) % 2 == 0):
            continue
        found.add(canonical_cycle(raw))
        if len(found) > cap:
            raise CapExceededError("enumerate_odd_cycles" if odd_only else "enumerate_cycles", cap)
    return CycleList(tuple(sorted(found, key=lambda c: (len(c), c))))


def enumerate_odd_cycles(G: Graph, cap: Optional[int] = None) -> CycleList:
    return enumerate_cycles(G, cap=cap, odd_only=True)


def is_almost_bipartite(G: Graph, cap: Optional[int] = None) -> bool:
    return len(enumerate_odd_cycles(G, cap=cap)) == 1


# ---------------------------------------------------------------------------
# Shipped fixtures


def _fixture(n: int, pairs: str) -> Graph:
    return Graph.from_edges(n, [(int(p[0]), int(p[1])) for p in pairs.split()])


FLOWER7_EDGES = "01 12 23 34 04 05 56"

FIXTURES: Dict[str, Graph] = {
    "K1": Graph(1, ()),
    "K2": _fixture(2, "01"),
    "P3": _fixture(3, "01 12"),
    "P4": _fixture(4, "01 12 23"),
    "K3": _fixture(3, "01 12 02"),
    "C4": _fixture(4, "01 12 23 03"),
    "C5": _fixture(5, "01 12 23 34 04"),
    "K13": _fixture(4, "01 02 03"),
    "FLOWER7": _fixture(7, FLOWER7_EDGES),
    "DUMBBELL6": _fixture(6, "01 12 02 34 45 35 03"),
    "BAB9": _fixture(9, FLOWER7_EDGES + " 78 57"),
}


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
