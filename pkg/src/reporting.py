"""Analysis report for a single graph, plus the oracle cross-check behind ``--oracle``."""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .bab import BABStructure, fast_critical_sets, is_r_disjoint, recognize_bab
from .config import get_settings
from .errors import SizeGuardError
from .gallai_edmonds import gallai_edmonds, validate_ge
from .graph import Graph, VertexSet, enumerate_odd_cycles
from .independence import alpha, core_corona, critical_difference, critical_profile
from .matching import matching_number, maximum_matching
from .spectral import adjacency_determinant, has_sachs_subgraph, iter_sachs, sachs_expansion
from .theorems import theorem_suite

logger = logging.getLogger(__name__)


@dataclass
class AnalysisReport:
    n: int
    m: int
    alpha: int
    mu: int
    deficiency: int
    is_ke: bool
    D: VertexSet
    A: VertexSet
    C: VertexSet
    X: VertexSet
    Y: VertexSet
    d: int
    ker: VertexSet
    core: VertexSet
    nucleus: VertexSet
    diadem: VertexSet
    corona: VertexSet
    odd_cycle_count: int
    r_disjoint: bool
    bab_structure: Optional[BABStructure]
    det: int
    has_sachs: bool
    theorem_suite: Optional[Dict[str, dict]] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "alpha": self.alpha,
            "mu": self.mu,
            "deficiency": self.deficiency,
            "isKE": self.is_ke,
            "D": list(self.D),
            "A": list(self.A),
            "C": list(self.C),
            "X": list(self.X),
            "Y": list(self.Y),
            "d": self.d,
            "ker": list(self.ker),
            "core": list(self.core),
            "nucleus": list(self.nucleus),
            "diadem": list(self.diadem),
            "corona": list(self.corona),
            "oddCycleCount": self.odd_cycle_count,
            "rDisjoint": self.r_disjoint,
            "babStructure": None if self.bab_structure is None else self.bab_structure.to_dict(),
            "det": self.det,
            "hasSachs": self.has_sachs,
            "theoremSuite": self.theorem_suite,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def render(self) -> str:
        """Plain-text rendering, one field per line."""

        def fmt(value) -> str:
            if isinstance(value, (list, tuple)):
                return "{" + ", ".join(str(v) for v in value) + "}"
            return str(value)

        data = self.to_dict()
        suite = data.pop("theoremSuite")
        structure = data.pop("babStructure")
        lines = [f"{key:>15}: {fmt(value)}" for key, value in data.items()]
        if structure is None:
            lines.append(f"{'babStructure':>15}: none found")
        else:
            lines.append(f"{'babStructure':>15}: k={structure['k']} B={fmt(structure['B'])} "
                         f"parts={' '.join(fmt(p) for p in structure['parts'])}")
        if suite:
            marks = []
            for name, clause in sorted(suite.items()):
                if not clause["applicable"]:
                    marks.append(f"{name}:n/a")
                else:
                    marks.append(f"{name}:{'ok' if clause['holds'] else 'FAIL'}")
            lines.append(f"{'theoremSuite':>15}: {' '.join(marks)}")
        lines.extend(f"{'note':>15}: {note}" for note in self.notes)
        return "\n".join(lines)


def analyze_graph(G: Graph, max_n: Optional[int] = None) -> AnalysisReport:
    """Every invariant the package computes, via the structural fast paths where they apply."""

    settings = get_settings()
    limit = settings.desk_max_n if max_n is None else max_n
    if G.n > limit:
        raise SizeGuardError("analyze", G.n, limit)

    a = alpha(G)
    mu = matching_number(G)
    dec = gallai_edmonds(G)
    odd = len(enumerate_odd_cycles(G))
    r_disjoint = bool(is_r_disjoint(G, max_n=limit)) if odd else False
    structure = recognize_bab(G, max_n=limit).structure
    core, corona = core_corona(G)
    notes: List[str] = []

    if structure is not None:
        fast = fast_critical_sets(G, structure, validate=False)
        nucleus, diadem, ker = fast.nucleus, fast.diadem, fast.ker
    else:
        prof = critical_profile(G)
        nucleus, diadem, ker = prof.nucleus, prof.diadem, prof.ker

    suite = None
    if structure is not None:
        if G.n <= settings.oracle_max_n:
            suite = theorem_suite(G, structure, validate=False).to_dict()
        else:
            notes.append(f"theorem suite needs n <= {settings.oracle_max_n}")

    return AnalysisReport(
        n=G.n,
        m=G.m,
        alpha=a.size,
        mu=mu,
        deficiency=G.n - 2 * mu,
        is_ke=a.size + mu == G.n,
        D=dec.D,
        A=dec.A,
        C=dec.C,
        X=dec.X,
        Y=dec.Y,
        d=critical_difference(G),
        ker=ker,
        core=core,
        nucleus=nucleus,
        diadem=diadem,
        corona=corona,
        odd_cycle_count=odd,
        r_disjoint=r_disjoint,
        bab_structure=structure,
        det=adjacency_determinant(G),
        has_sachs=next(iter_sachs(G), None) is not None,
        theorem_suite=suite,
        notes=notes,
    )


def oracle_check(G: Graph, report: AnalysisReport) -> List[str]:
    """Recompute the report's fields by enumeration; returns the mismatches."""

    mismatches = []
    prof = critical_profile(G)
    for name in ("alpha", "d", "ker", "core", "nucleus", "diadem", "corona"):
        if getattr(report, name) != getattr(prof, name):
            mismatches.append(f"{name}: report {getattr(report, name)} != oracle {getattr(prof, name)}")
    if prof.d != prof.d_independent:
        mismatches.append(f"d={prof.d} but d_I={prof.d_independent}")
    expansion = sachs_expansion(G)
    if expansion != report.det:
        mismatches.append(f"det {report.det} != Sachs expansion {expansion}")
    existence = has_sachs_subgraph(G)
    if existence.exists != report.has_sachs:
        mismatches.append(f"hasSachs {report.has_sachs} != routes {existence.routes}")
    problems = validate_ge(G, gallai_edmonds(G), maximum_matching(G, verify=True))
    mismatches.extend(f"Gallai-Edmonds: {p}" for p in problems)
    if report.is_ke != (prof.alpha + report.mu == G.n):
        mismatches.append("isKE disagrees with alpha + mu = n")
    logger.debug("oracle check: %d mismatches", len(mismatches))
    return mismatches
