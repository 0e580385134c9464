"""Gallai–Edmonds decomposition ``D, A, C`` with the refinement ``X, Y`` of ``D``."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .graph import (
    Graph,
    VertexSet,
    bipartition,
    components,
    induced_subgraph,
    neighborhood,
    remove_vertices,
)
from .matching import Matching, matching_number

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GEDecomposition:
    D: VertexSet
    A: VertexSet
    C: VertexSet
    components_of_d: Tuple[VertexSet, ...]
    X: VertexSet
    Y: VertexSet
    c_bipartition: Optional[Tuple[VertexSet, VertexSet]] = None

    def to_dict(self) -> Dict[str, list]:
        return {
            "D": list(self.D),
            "A": list(self.A),
            "C": list(self.C),
            "X": list(self.X),
            "Y": list(self.Y),
        }


def _c_bipartition(G: Graph, C: VertexSet) -> Optional[Tuple[VertexSet, VertexSet]]:
    H, index = induced_subgraph(G, C)
    sides = bipartition(H)
    if sides is None:
        return None
    U, W = sides
    return tuple(index[i] for i in U), tuple(index[i] for i in W)


def decomposition_from_d(G: Graph, D: VertexSet) -> GEDecomposition:
    """Derive ``A``, ``C``, ``X``, ``Y`` and the bipartition of ``G[C]`` from ``D``."""

    D = tuple(sorted(D))
    in_d = set(D)
    A = tuple(v for v in neighborhood(G, D) if v not in in_d)
    in_a = set(A)
    C = tuple(v for v in G.vertices if v not in in_d and v not in in_a)

    H, index = induced_subgraph(G, D)
    parts, _ = components(H)
    comps = tuple(sorted(tuple(index[i] for i in part) for part in parts))
    X = tuple(sorted(c[0] for c in comps if len(c) == 1))
    Y = tuple(sorted(v for c in comps if len(c) > 1 for v in c))
    return GEDecomposition(D, A, C, comps, X, Y, _c_bipartition(G, C))


def gallai_edmonds(G: Graph) -> GEDecomposition:
    """``D = {v : μ(G-v) = μ(G)}``; one matching computation per vertex plus one."""

    mu = matching_number(G)
    D = tuple(v for v in G.vertices if matching_number(remove_vertices(G, [v])[0]) == mu)
    dec = decomposition_from_d(G, D)
    logger.debug("Gallai-Edmonds: |D|=%d |A|=%d |C|=%d", len(dec.D), len(dec.A), len(dec.C))
    return dec


def is_factor_critical(G: Graph) -> bool:
    if G.n % 2 == 0:
        return False
    target = (G.n - 1) // 2
    return all(matching_number(remove_vertices(G, [v])[0]) == target for v in G.vertices)


def validate_ge(G: Graph, dec: GEDecomposition, M: Matching) -> List[str]:
    """Check the matching-structure clauses of the decomposition against ``M``.

    Components of ``G[D]`` are recomputed from ``dec.D`` so a tampered
    ``components_of_d`` cannot hide a violation.
    """

    violations: List[str] = []
    mate = M.mate
    labels = set(dec.D) | set(dec.A) | set(dec.C)
    if len(labels) != G.n or len(dec.D) + len(dec.A) + len(dec.C) != G.n:
        violations.append("D, A, C do not partition V(G)")

    for v in dec.C:
        if mate[v] == v:
            violations.append(f"C vertex {v} is exposed")
        elif mate[v] not in dec.C:
            violations.append(f"C vertex {v} is matched outside C to {mate[v]}")

    H, index = induced_subgraph(G, dec.D)
    parts, _ = components(H)
    comps = [tuple(index[i] for i in part) for part in parts]
    owner = {v: i for i, comp in enumerate(comps) for v in comp}

    used = set()
    for v in dec.A:
        w = mate[v]
        if w == v:
            violations.append(f"A vertex {v} is exposed")
        elif w not in owner:
            violations.append(f"A vertex {v} is matched to {w} outside D")
        elif owner[w] in used:
            violations.append(f"A vertex {v} is matched into an already used component of G[D]")
        else:
            used.add(owner[w])

    for comp in comps:
        inside = set(comp)
        internal = sum(1 for v in comp if mate[v] != v and mate[v] in inside) // 2
        if 2 * internal != len(comp) - 1:
            violations.append(f"matching is not near-perfect on component {list(comp)}")
    return violations
