"""Clause-by-clause check of the BAB identities on one graph and structure.

Every quantity comes from the enumeration oracles in :mod:`src.independence`
and the decomposition in :mod:`src.gallai_edmonds`; nothing here uses the
closed forms it is checking.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

from .bab import BABStructure, validate_structure
from .errors import StructureError
from .gallai_edmonds import gallai_edmonds
from .graph import Graph, enumerate_odd_cycles, induced_subgraph, neighborhood
from .independence import alpha, critical_profile, difference, is_independent
from .matching import matching_number
from .spectral import iter_sachs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClauseResult:
    name: str
    holds: bool
    applicable: bool = True
    detail: str = ""
    equality: Optional[bool] = None


@dataclass
class TheoremReport:
    clauses: List[ClauseResult] = field(default_factory=list)
    r_disjoint: bool = False
    has_sachs: bool = False

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.clauses if c.applicable)

    @property
    def failures(self) -> List[ClauseResult]:
        return [c for c in self.clauses if c.applicable and not c.holds]

    def clause(self, name: str) -> ClauseResult:
        return next(c for c in self.clauses if c.name == name)

    def to_dict(self) -> Dict[str, dict]:
        return {c.name: {k: v for k, v in asdict(c).items() if k != "name"} for c in self.clauses}


def _fmt(vertices) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"


def theorem_suite(G: Graph, s: BABStructure, max_n: Optional[int] = None, validate: bool = True) -> TheoremReport:
    """Evaluate clauses ``a`` to ``p`` for the BAB graph ``G`` with structure ``s``."""

    if validate:
        problems = validate_structure(G, s)
        if problems:
            raise StructureError("invalid BAB structure", problems)

    prof = critical_profile(G, max_n=max_n)
    dec = gallai_edmonds(G)
    V = set(G.vertices)
    k = s.k
    n = G.n
    a = prof.alpha
    D, A, C, X, Y = (set(x) for x in (dec.D, dec.A, dec.C, dec.X, dec.Y))
    ker, core, nucleus, diadem, corona = (
        set(x) for x in (prof.ker, prof.core, prof.nucleus, prof.diadem, prof.corona)
    )
    mu = matching_number(G)
    B_graph = induced_subgraph(G, s.b)[0]
    mu_b = matching_number(B_graph)
    def_g = n - 2 * mu
    def_b = B_graph.n - 2 * mu_b
    r_disjoint = k > 0 and len(enumerate_odd_cycles(G)) == k
    has_sachs = next(iter_sachs(G), None) is not None
    U, W = dec.c_bipartition if dec.c_bipartition is not None else ((), ())
    report = TheoremReport(r_disjoint=r_disjoint, has_sachs=has_sachs)
    add = report.clauses.append

    # (a) nucleus ∪ S ∪ U is a maximum independent set
    cycle_vertices = sorted({v for c in s.odd_cycles for v in c})
    H, index = induced_subgraph(G, cycle_vertices)
    S = {index[v] for v in alpha(H).witness}
    candidate = nucleus | S | set(U)
    add(ClauseResult(
        "a",
        is_independent(G, candidate) and len(candidate) == a,
        applicable=dec.c_bipartition is not None,
        detail=f"|{_fmt(candidate)}| = {len(candidate)}, alpha = {a}",
    ))

    add(ClauseResult("b", corona | A == V, detail=f"corona ∪ A = {_fmt(corona | A)}"))
    add(ClauseResult("c", core <= nucleus, detail=f"core {_fmt(core)} ⊆ nucleus {_fmt(nucleus)}"))

    rhs = len(D) + len(nucleus) + len(C)
    add(ClauseResult("d", 2 * a + k == rhs, detail=f"{2 * a + k} = {len(D)}+{len(nucleus)}+{len(C)}"))

    total = len(corona) + len(ker)
    equal = total == 2 * a + k
    add(ClauseResult(
        "e",
        total <= 2 * a + k and (equal or not r_disjoint),
        detail=f"{len(corona)}+{len(ker)} <= {2 * a + k}",
        equality=equal,
    ))

    closed = set(neighborhood(G, diadem, closed=True))
    add(ClauseResult(
        "f",
        closed | Y == V and not closed & Y,
        detail=f"N[diadem] = {_fmt(closed)}, Y = {_fmt(Y)}",
    ))

    add(ClauseResult(
        "g",
        ker <= core <= nucleus <= diadem <= corona,
        detail="ker ⊆ core ⊆ nucleus ⊆ diadem ⊆ corona",
    ))

    add(ClauseResult(
        "h",
        len(nucleus) == len(A) and def_g == def_b + k and 2 * mu == n - B_graph.n - k + 2 * mu_b,
        applicable=has_sachs,
        detail=f"|nucleus|={len(nucleus)} |A|={len(A)}; def {def_g} = {def_b}+{k}; mu {mu}",
    ))

    # (i) X is critical independent, N(X) = A, X ∪ U and X ∪ W are maximum critical
    largest = len(prof.max_critical_witness)

    def max_critical(I) -> bool:
        return is_independent(G, I) and difference(G, I) == prof.d and len(I) == largest

    add(ClauseResult(
        "i",
        set(neighborhood(G, X)) == A
        and is_independent(G, X)
        and difference(G, X) == prof.d
        and max_critical(X | set(U))
        and max_critical(X | set(W)),
        applicable=dec.c_bipartition is not None,
        detail=f"N(X) = {_fmt(neighborhood(G, X))}, |X ∪ U| = {len(X) + len(U)}, max critical size {largest}",
    ))

    add(ClauseResult(
        "j",
        nucleus <= D and len(nucleus) + len(D - nucleus) + len(A) + len(C) == n,
        detail="nucleus, D - nucleus, A, C partition V",
    ))

    add(ClauseResult(
        "k",
        nucleus == diadem,
        applicable=not C or not s.b,
        detail=f"nucleus {_fmt(nucleus)}, diadem {_fmt(diadem)}",
    ))

    cycle = set(s.odd_cycles[0]) if k == 1 else set()
    add(ClauseResult(
        "l",
        cycle | closed == V,
        applicable=k == 1 and not s.b,
        detail=f"V(C) ∪ N[diadem] = {_fmt(cycle | closed)}",
    ))

    core_nbrs = set(neighborhood(G, core))
    add(ClauseResult(
        "m",
        ker == core and len(corona) + len(core) == 2 * a + k and corona | core_nbrs == V,
        applicable=r_disjoint,
        detail=f"ker {_fmt(ker)}, core {_fmt(core)}, |corona|+|core| = {len(corona) + len(core)}",
    ))

    add(ClauseResult("n", def_g >= def_b + k, detail=f"def(G) = {def_g}, def(B)+k = {def_b + k}"))

    blocks = [s.b] + list(s.parts)
    block_without_sachs = any(
        next(iter_sachs(induced_subgraph(G, block)[0]), None) is None for block in blocks
    )
    add(ClauseResult(
        "o",
        bool(ker),
        applicable=block_without_sachs,
        detail=f"some block has no Sachs subgraph; ker = {_fmt(ker)}",
    ))

    add(ClauseResult("p", 2 * a + k == prof.d + n, detail=f"{2 * a + k} = {prof.d}+{n}"))

    if not report.passed:
        logger.debug("theorem suite failures: %s", [c.name for c in report.failures])
    return report
