"""Bipartite–almost-bipartite (BAB) structure.

A BAB graph is a bipartite block ``B`` plus ``k`` almost bipartite non-KE
blocks ``G_1..G_k`` whose reach sets cover them, joined by crossing edges that
end in ``A(B) ∪ C(B)`` on the bipartite side and in ``A(G_i)`` on block ``i``.
This module builds, recognises and validates such structures; validation
always recomputes the underlying decompositions instead of trusting input.
"""

import itertools
import json
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .config import get_settings
from .errors import (
    InfeasibleParametersError,
    SizeGuardError,
    StructureError,
    VertexRangeError,
)
from .gallai_edmonds import gallai_edmonds
from .graph import (
    Cycle,
    Edge,
    Graph,
    VertexSet,
    bipartition,
    boundary_vertices,
    canonical_cycle,
    disjoint_union,
    enumerate_odd_cycles,
    induced_subgraph,
    is_connected,
    is_cycle_of,
    neighborhood,
)
from .independence import max_tight_set
from .matching import Matching, all_maximum_matchings, blossom_base, is_koenig_egervary, iter_stems

logger = logging.getLogger(__name__)

BlockRef = Union[str, int]


def _desk_guard(stage: str, G: Graph, max_n: Optional[int]) -> None:
    limit = get_settings().desk_max_n if max_n is None else max_n
    if G.n > limit:
        raise SizeGuardError(stage, G.n, limit)


# ---------------------------------------------------------------------------
# Reach sets and the flower decomposition


@dataclass(frozen=True)
class ReachSet:
    cycle: Cycle
    vertices: VertexSet
    flower_count: int


def _reach(G: Graph, cycle: Cycle, matchings: Sequence[Matching]) -> ReachSet:
    found = set()
    count = 0
    for M in matchings:
        base = blossom_base(cycle, M)
        if base is None:
            continue
        for stem in iter_stems(G, M, cycle, base):
            count += 1
            found.update(cycle)
            found.update(stem)
    return ReachSet(cycle, tuple(sorted(found)), count)


def reach_set(
    G: Graph,
    cycle: Sequence[int],
    cap: Optional[int] = None,
    max_n: Optional[int] = None,
) -> ReachSet:
    """Union of ``V(F)`` over every M-flower ``F`` with blossom ``cycle``, over all maximum ``M``."""

    _desk_guard("reach_set", G, max_n)
    if not is_cycle_of(G, cycle) or len(cycle) % 2 == 0:
        raise StructureError(f"{list(cycle)} is not an odd cycle of G")
    return _reach(G, canonical_cycle(cycle), all_maximum_matchings(G, cap=cap))


@dataclass(frozen=True)
class RDisjointReport:
    holds: bool
    reason: str = ""
    evidence: Tuple[Cycle, ...] = ()
    reach_sets: Tuple[ReachSet, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def is_r_disjoint(G: Graph, cap: Optional[int] = None, max_n: Optional[int] = None) -> RDisjointReport:
    _desk_guard("is_r_disjoint", G, max_n)
    cycles = enumerate_odd_cycles(G).cycles
    if not cycles:
        return RDisjointReport(False, "no odd cycle")
    matchings = all_maximum_matchings(G, cap=cap)
    reach = tuple(_reach(G, c, matchings) for c in cycles)
    for r in reach:
        if not r.vertices:
            return RDisjointReport(False, "empty reach set", (r.cycle,), reach)
    for a, b in itertools.combinations(reach, 2):
        if set(a.vertices) & set(b.vertices):
            return RDisjointReport(False, "overlapping reach sets", (a.cycle, b.cycle), reach)
    return RDisjointReport(True, "", (), reach)


@dataclass(frozen=True)
class FlowerDecomposition:
    reach_sets: Tuple[ReachSet, ...]
    b: VertexSet

    @property
    def k(self) -> int:
        return len(self.reach_sets)


def flower_decomposition(G: Graph, cap: Optional[int] = None, max_n: Optional[int] = None) -> FlowerDecomposition:
    """Partition ``V(G)`` into the reach sets and their complement ``B(G)``."""

    _desk_guard("flower_decomposition", G, max_n)
    if not enumerate_odd_cycles(G).cycles:
        return FlowerDecomposition((), G.vertices)
    report = is_r_disjoint(G, cap=cap, max_n=max_n)
    if not report:
        raise StructureError(f"G is not R-disjoint ({report.reason})")
    covered = set()
    for r in report.reach_sets:
        covered.update(r.vertices)
    decomposition = FlowerDecomposition(report.reach_sets, tuple(v for v in G.vertices if v not in covered))

    problems = []
    dec = gallai_edmonds(G)
    a_set = set(dec.A)
    ac_set = a_set | set(dec.C)
    if bipartition(induced_subgraph(G, decomposition.b)[0]) is None:
        problems.append("G[B(G)] is not bipartite")
    if not set(boundary_vertices(G, decomposition.b)) <= ac_set:
        problems.append("boundary of B(G) leaves A(G) ∪ C(G)")
    for r in decomposition.reach_sets:
        H = induced_subgraph(G, r.vertices)[0]
        if len(enumerate_odd_cycles(H)) != 1 or is_koenig_egervary(H):
            problems.append(f"G[R({list(r.cycle)})] is not almost bipartite non-KE")
        if not set(boundary_vertices(G, r.vertices)) <= a_set:
            problems.append(f"boundary of R({list(r.cycle)}) leaves A(G)")
    if problems:
        raise StructureError("flower decomposition failed its structural checks", problems)
    return decomposition


# ---------------------------------------------------------------------------
# Structures


@dataclass(frozen=True)
class BABStructure:
    b: VertexSet
    parts: Tuple[VertexSet, ...]
    odd_cycles: Tuple[Cycle, ...]
    crossing_edges: Tuple[Edge, ...]
    connected: bool = True

    @property
    def k(self) -> int:
        return len(self.parts)

    def block_of(self) -> Dict[int, int]:
        """Vertex to block index: 0 for ``B``, ``i`` for part ``G_i``."""

        owner = {v: 0 for v in self.b}
        for i, part in enumerate(self.parts, start=1):
            owner.update((v, i) for v in part)
        return owner

    def to_dict(self) -> dict:
        return {
            "B": list(self.b),
            "parts": [list(p) for p in self.parts],
            "crossing": [list(e) for e in self.crossing_edges],
            "k": self.k,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str, G: Optional[Graph] = None) -> "BABStructure":
        """Parse the sidecar JSON; with ``G`` the odd cycles and connectivity are recomputed."""

        data = json.loads(text)
        parts = tuple(tuple(sorted(p)) for p in data["parts"])
        if data.get("k", len(parts)) != len(parts):
            raise StructureError(f"k={data['k']} does not match {len(parts)} parts")
        cycles: Tuple[Cycle, ...] = ()
        connected = True
        if G is not None:
            cycles = tuple(_part_cycle(G, p) or () for p in parts)
            connected = is_connected(G)
        return cls(
            b=tuple(sorted(data["B"])),
            parts=parts,
            odd_cycles=cycles,
            crossing_edges=tuple(sorted(tuple(sorted(e)) for e in data["crossing"])),
            connected=connected,
        )


def _part_cycle(G: Graph, part: VertexSet) -> Optional[Cycle]:
    H, index = induced_subgraph(G, part)
    odd = enumerate_odd_cycles(H).cycles
    if len(odd) != 1:
        return None
    return canonical_cycle([index[v] for v in odd[0]])


def crossing_edges_of(G: Graph, blocks: Sequence[VertexSet]) -> Tuple[Edge, ...]:
    owner = {v: i for i, block in enumerate(blocks) for v in block}
    return tuple(e for e in G.edges if owner[e[0]] != owner[e[1]])


def _allowed_endpoints(G: Graph, block: VertexSet, bipartite_side: bool) -> set:
    H, index = induced_subgraph(G, block)
    dec = gallai_edmonds(H)
    allowed = dec.A + dec.C if bipartite_side else dec.A
    return {index[v] for v in allowed}


def validate_structure(G: Graph, s: BABStructure, check_reach: bool = True) -> List[str]:
    """Recompute every structural requirement of ``s`` on ``G``; cheap checks run first."""

    blocks = [s.b] + list(s.parts)
    flat = [v for block in blocks for v in block]
    if sorted(flat) != list(range(G.n)):
        return ["B and the parts do not partition V(G)"]
    if len(s.odd_cycles) != len(s.parts):
        return [f"{len(s.odd_cycles)} odd cycles recorded for {len(s.parts)} parts"]

    problems: List[str] = []
    if bipartition(induced_subgraph(G, s.b)[0]) is None:
        problems.append("G[B] is not bipartite")
    for i, part in enumerate(s.parts, start=1):
        cycle = _part_cycle(G, part)
        if cycle is None:
            problems.append(f"G_{i} does not have exactly one odd cycle")
        elif not s.odd_cycles[i - 1] or cycle != canonical_cycle(s.odd_cycles[i - 1]):
            problems.append(f"recorded odd cycle of G_{i} is {list(s.odd_cycles[i - 1])}, found {list(cycle)}")

    actual = crossing_edges_of(G, blocks)
    if tuple(sorted(s.crossing_edges)) != actual:
        problems.append("recorded crossing edges differ from the edges between blocks")
    if problems:
        return problems

    owner = s.block_of()
    allowed = [_allowed_endpoints(G, block, i == 0) for i, block in enumerate(blocks)]
    for edge in actual:
        for v in edge:
            if v not in allowed[owner[v]]:
                where = "A(B) ∪ C(B)" if owner[v] == 0 else f"A(G_{owner[v]})"
                problems.append(f"crossing endpoint {v} of {list(edge)} is not in {where}")
    if problems:
        return problems

    for i, part in enumerate(s.parts, start=1):
        H, index = induced_subgraph(G, part)
        if is_koenig_egervary(H):
            problems.append(f"G_{i} is König–Egerváry")
        elif check_reach:
            position = {old: new for new, old in enumerate(index)}
            local = [position[v] for v in s.odd_cycles[i - 1]]
            if len(reach_set(H, local).vertices) != H.n:
                problems.append(f"reach set of the odd cycle of G_{i} is not all of G_{i}")
    return problems


def _part_violations(H: Graph, label: str) -> List[str]:
    odd = enumerate_odd_cycles(H).cycles
    if len(odd) != 1:
        return [f"{label} has {len(odd)} odd cycles, expected exactly one"]
    if is_koenig_egervary(H):
        return [f"{label} is König–Egerváry"]
    if len(reach_set(H, odd[0]).vertices) != H.n:
        return [f"{label}: reach set of its odd cycle is not the whole vertex set"]
    return []


def assemble_bab(
    B: Graph,
    parts: Sequence[Graph],
    crossing: Iterable[Tuple[BlockRef, int, BlockRef, int]] = (),
) -> Tuple[Graph, BABStructure]:
    """Disjoint union of ``B`` then ``parts`` (in order), plus the crossing edges.

    Each crossing entry is ``(block, vertex, block, vertex)`` with block
    ``"B"`` or a part index and vertices local to their block.
    """

    problems = [] if bipartition(B) is not None else ["B is not bipartite"]
    for i, H in enumerate(parts, start=1):
        problems += _part_violations(H, f"G_{i}")
    if problems:
        raise StructureError("BAB preconditions fail", problems)

    graphs = [B] + list(parts)
    union, offsets = disjoint_union(graphs)
    dec_b = gallai_edmonds(B)
    allowed = [set(dec_b.A) | set(dec_b.C)] + [set(gallai_edmonds(H).A) for H in parts]

    def resolve(ref: BlockRef, v: int) -> Tuple[int, int]:
        if ref == "B":
            block = 0
        elif isinstance(ref, (int, np.integer)) and 0 <= int(ref) < len(parts):
            block = int(ref) + 1
        else:
            raise StructureError(f"unknown block {ref!r}")
        if not 0 <= v < graphs[block].n:
            raise VertexRangeError(f"vertex {v} outside block {ref!r} of order {graphs[block].n}")
        if v not in allowed[block]:
            name = "A(B)∪C(B)" if block == 0 else f"A(G_{block})"
            raise StructureError(f"endpoint {v} ∉ {name}={sorted(allowed[block])}")
        return block, offsets[block] + v

    added = set()
    for ref_a, u, ref_b, v in crossing:
        block_a, x = resolve(ref_a, u)
        block_b, y = resolve(ref_b, v)
        if block_a == block_b:
            raise StructureError(f"crossing edge ({ref_a!r},{u})-({ref_b!r},{v}) stays inside one block")
        edge = (min(x, y), max(x, y))
        if edge in added:
            raise StructureError(f"duplicate crossing edge {list(edge)}")
        added.add(edge)

    G = union.add_edges(sorted(added))
    blocks = [tuple(range(offsets[i], offsets[i] + H.n)) for i, H in enumerate(graphs)]
    cycles = tuple(
        canonical_cycle([offsets[i] + v for v in enumerate_odd_cycles(H).cycles[0]])
        for i, H in enumerate(parts, start=1)
    )
    structure = BABStructure(
        b=blocks[0],
        parts=tuple(blocks[1:]),
        odd_cycles=cycles,
        crossing_edges=tuple(sorted(added)),
        connected=is_connected(G),
    )
    problems = validate_structure(G, structure, check_reach=False)
    if problems:
        raise StructureError("assembled graph is not a valid BAB structure", problems)

    expected_d = sorted(offsets[i] + v for i, H in enumerate(graphs) for v in gallai_edmonds(H).D)
    actual_d = list(gallai_edmonds(G).D)
    if actual_d != expected_d:
        raise StructureError(f"D(G)={actual_d} differs from the union of block D sets {expected_d}")
    return G, structure


# ---------------------------------------------------------------------------
# Recognition


class Recognition(NamedTuple):
    structure: Optional[BABStructure]
    exhaustive: bool


def _structure_from_blocks(G: Graph, b: Sequence[int], parts: Sequence[Sequence[int]], cycles) -> BABStructure:
    blocks = [tuple(sorted(b))] + [tuple(sorted(p)) for p in parts]
    return BABStructure(
        b=blocks[0],
        parts=tuple(blocks[1:]),
        odd_cycles=tuple(canonical_cycle(c) for c in cycles),
        crossing_edges=crossing_edges_of(G, blocks),
        connected=is_connected(G),
    )


def _is_chordless_odd_cycle(G: Graph, vertices: VertexSet) -> Optional[Cycle]:
    H, index = induced_subgraph(G, vertices)
    if H.n < 3 or H.n % 2 == 0 or any(H.degree(v) != 2 for v in range(H.n)):
        return None
    odd = enumerate_odd_cycles(H).cycles
    if len(odd) != 1 or len(odd[0]) != H.n:
        return None
    return canonical_cycle([index[v] for v in odd[0]])


def recognize_bab(
    G: Graph,
    search_cap: int = 100_000,
    cap: Optional[int] = None,
    max_n: Optional[int] = None,
) -> Recognition:
    """Find a BAB structure of ``G``.

    Bipartite graphs give ``k = 0`` and R-disjoint graphs their flower
    decomposition. Otherwise the non-trivial components of ``G[D]`` must be
    chordless odd cycles, one per part, and every remaining vertex is tried in
    ``B`` or in each part. ``exhaustive`` is false only when ``search_cap``
    candidate assignments were tried without covering the whole space.
    """

    _desk_guard("recognize_bab", G, max_n)
    if bipartition(G) is not None:
        return Recognition(_structure_from_blocks(G, G.vertices, [], []), True)

    report = is_r_disjoint(G, cap=cap, max_n=max_n)
    if report:
        covered = {v for r in report.reach_sets for v in r.vertices}
        s = _structure_from_blocks(
            G,
            [v for v in G.vertices if v not in covered],
            [r.vertices for r in report.reach_sets],
            [r.cycle for r in report.reach_sets],
        )
        if not validate_structure(G, s):
            return Recognition(s, True)
        logger.debug("flower decomposition of an R-disjoint graph failed validation; searching")

    dec = gallai_edmonds(G)
    cycles = []
    for comp in dec.components_of_d:
        if len(comp) == 1:
            continue
        cycle = _is_chordless_odd_cycle(G, comp)
        if cycle is None:
            return Recognition(None, True)
        cycles.append(cycle)
    if not cycles:
        return Recognition(None, True)

    seeded = {v for c in cycles for v in c}
    free = [v for v in G.vertices if v not in seeded]
    k = len(cycles)
    tried = 0
    for labels in itertools.product(range(k + 1), repeat=len(free)):
        if tried >= search_cap:
            logger.info("recognize_bab: stopped after %d candidate partitions", tried)
            return Recognition(None, False)
        tried += 1
        parts = [list(c) for c in cycles]
        b = []
        for v, label in zip(free, labels):
            (b if label == 0 else parts[label - 1]).append(v)
        s = _structure_from_blocks(G, b, parts, cycles)
        if not validate_structure(G, s):
            return Recognition(s, True)
    return Recognition(None, True)


# ---------------------------------------------------------------------------
# Critical sets from the structure


class FastCriticalSets(NamedTuple):
    nucleus: VertexSet
    diadem: VertexSet
    ker: VertexSet
    tight_set: VertexSet


def fast_critical_sets(G: Graph, s: BABStructure, validate: bool = True) -> FastCriticalSets:
    """nucleus = X, diadem = X ∪ C and ker = X - N(S) for the maximum tight ``S ⊆ A``."""

    if validate:
        problems = validate_structure(G, s)
        if problems:
            raise StructureError("invalid BAB structure", problems)
    dec = gallai_edmonds(G)
    S = max_tight_set(G, dec.A, dec.X)
    removed = set(neighborhood(G, S))
    return FastCriticalSets(
        nucleus=dec.X,
        diadem=tuple(sorted(set(dec.X) | set(dec.C))),
        ker=tuple(v for v in dec.X if v not in removed),
        tight_set=S,
    )


# ---------------------------------------------------------------------------
# Random generation


def _parse_range(value, odd_name: str) -> Tuple[int, int]:
    if isinstance(value, (tuple, list)):
        lo, hi = int(value[0]), int(value[-1])
    else:
        text = str(value).strip()
        for sep in ("..", "-", ":"):
            if sep in text:
                lo, hi = (int(x) for x in text.split(sep, 1))
                break
        else:
            lo = hi = int(text)
    if lo > hi:
        raise InfeasibleParametersError(f"{odd_name}: empty range {lo}..{hi}")
    return lo, hi


def _parse_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class GeneratorParams:
    """Generator knobs; ranges are inclusive ``(lo, hi)`` pairs."""

    k: int = 1
    bip_order: Tuple[int, int] = (0, 4)
    cycle_len: Tuple[int, int] = (3, 7)
    depth: int = 1
    crossing: float = 0.3
    allow_disconnected: bool = True
    max_attempts: int = 64

    @classmethod
    def from_config(cls, config: Union[str, Mapping[str, object]]) -> "GeneratorParams":
        """Build from ``key=value`` pairs (whitespace or comma separated) or a mapping."""

        if isinstance(config, str):
            pairs = {}
            for token in config.replace(",", " ").split():
                if "=" not in token:
                    raise InfeasibleParametersError(f"expected key=value, got {token!r}")
                key, value = token.split("=", 1)
                pairs[key.strip()] = value.strip()
            config = pairs
        known = {"k", "bip_order", "cycle_len", "depth", "crossing", "allow_disconnected", "max_attempts"}
        unknown = set(config) - known
        if unknown:
            raise InfeasibleParametersError(f"unknown generator keys: {sorted(unknown)}")
        kwargs = {}
        if "k" in config:
            kwargs["k"] = int(config["k"])
        if "bip_order" in config:
            kwargs["bip_order"] = _parse_range(config["bip_order"], "bip_order")
        if "cycle_len" in config:
            kwargs["cycle_len"] = _parse_range(config["cycle_len"], "cycle_len")
        if "depth" in config:
            kwargs["depth"] = int(config["depth"])
        if "crossing" in config:
            kwargs["crossing"] = float(config["crossing"])
        if "allow_disconnected" in config:
            kwargs["allow_disconnected"] = _parse_bool(config["allow_disconnected"])
        if "max_attempts" in config:
            kwargs["max_attempts"] = int(config["max_attempts"])
        return cls(**kwargs)

    def check(self) -> None:
        if self.k < 0 or self.depth < 0 or self.max_attempts < 1:
            raise InfeasibleParametersError("k, depth and max_attempts must be non-negative (attempts >= 1)")
        if not 0.0 <= self.crossing <= 1.0:
            raise InfeasibleParametersError(f"crossing density {self.crossing} is outside [0, 1]")
        if self.bip_order[0] < 0 or self.bip_order[0] > self.bip_order[1]:
            raise InfeasibleParametersError(f"invalid bipartite order range {self.bip_order}")
        lo, hi = self.cycle_len
        if self.k and not any(L % 2 == 1 for L in range(max(lo, 3), hi + 1)):
            raise InfeasibleParametersError(f"cycle length range {self.cycle_len} holds no odd length >= 3")
        if self.k and self.crossing > 0 and self.depth == 0:
            raise InfeasibleParametersError(
                "crossing edges requested but bare odd cycles have A(G_i) = ∅ (use depth >= 1)"
            )
        if self.k > 1 and not self.allow_disconnected and self.depth == 0:
            raise InfeasibleParametersError("k > 1 with depth 0 cannot be connected")


def _random_bipartite(rng: np.random.Generator, order: int) -> Graph:
    """A random tree with a few extra edges between the colour classes."""

    edges = set()
    colour = [0] * order
    for v in range(1, order):
        u = int(rng.integers(0, v))
        colour[v] = 1 - colour[u]
        edges.add((u, v))
    for u in range(order):
        for v in range(u + 1, order):
            if colour[u] != colour[v] and (u, v) not in edges and rng.random() < 0.2:
                edges.add((u, v))
    return Graph(order, tuple(sorted(edges)))


def _random_part(rng: np.random.Generator, params: GeneratorParams) -> Graph:
    """Odd cycle with length-2 paths hung at even distance, one per attachment level."""

    odd_lengths = [L for L in range(max(params.cycle_len[0], 3), params.cycle_len[1] + 1) if L % 2]
    length = int(rng.choice(odd_lengths))
    edges = [(i, (i + 1) % length) for i in range(length)]
    anchors = list(range(length))
    n = length
    for _ in range(params.depth):
        at = anchors[int(rng.integers(0, len(anchors)))]
        edges += [(at, n), (n, n + 1)]
        anchors.append(n + 1)
        n += 2
    return Graph.from_edges(n, edges)


def generate_random_bab(seed: int, params: Optional[GeneratorParams] = None) -> Tuple[Graph, BABStructure]:
    """Deterministic random BAB instance for ``(seed, params)``, validated by :func:`assemble_bab`."""

    params = params or GeneratorParams()
    params.check()
    rng = np.random.default_rng(seed)
    for attempt in range(params.max_attempts):
        order = int(rng.integers(params.bip_order[0], params.bip_order[1] + 1))
        B = _random_bipartite(rng, order)
        parts = [_random_part(rng, params) for _ in range(params.k)]

        endpoints: List[List[Tuple[BlockRef, int]]] = []
        dec_b = gallai_edmonds(B)
        endpoints.append([("B", v) for v in sorted(set(dec_b.A) | set(dec_b.C))])
        for i, H in enumerate(parts):
            endpoints.append([(i, v) for v in gallai_edmonds(H).A])
        crossing = []
        for x, y in itertools.combinations(range(len(endpoints)), 2):
            for ref_a, u in endpoints[x]:
                for ref_b, v in endpoints[y]:
                    if rng.random() < params.crossing:
                        crossing.append((ref_a, u, ref_b, v))
        try:
            G, structure = assemble_bab(B, parts, crossing)
        except StructureError as exc:
            logger.warning("generator draw %d for seed %d rejected: %s", attempt, seed, exc)
            continue
        if not params.allow_disconnected and not structure.connected:
            logger.debug("generator draw %d for seed %d is disconnected; redrawing", attempt, seed)
            continue
        return G, structure
    raise InfeasibleParametersError(
        f"no valid instance after {params.max_attempts} draws for seed {seed} with {params}"
    )
