"""Cross-module property suites.

A :class:`VerifyPlan` fixes the corpora (exhaustive small graphs or seeded
random graphs, plus generated BAB instances); each suite walks its corpus and
collects violations. Results contain counts only, never timings, so a report
is byte-identical for a fixed plan regardless of the number of workers.
"""

import functools
import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from . import bab, spectral
from .bab import BABStructure, GeneratorParams, generate_random_bab, is_r_disjoint, recognize_bab
from .errors import BABError, CapExceededError, InfeasibleParametersError, SizeGuardError
from .gallai_edmonds import gallai_edmonds, is_factor_critical, validate_ge
from .graph import FIXTURES, Graph, disjoint_union, enumerate_odd_cycles, induced_subgraph, neighborhood
from .independence import (
    core_corona,
    critical_difference,
    critical_difference_subsets,
    critical_independence_difference,
    critical_independent_sets,
    critical_profile,
    difference,
    independent_sets,
    ker_hall_check,
    matchable_into,
    max_tight_set,
    maximum_independent_sets,
)
from .instances import EXHAUSTIVE_MAX_N, all_graphs_up_to, atlas_graphs, random_graphs, split_seed
from .matching import (
    FlowerCert,
    all_maximum_matchings,
    is_koenig_egervary,
    maximum_matching,
    sterboul_certificate,
    validate_flower,
    validate_posy,
)
from .theorems import theorem_suite

logger = logging.getLogger(__name__)

MAX_MESSAGES = 10
# per-instance odd-cycle budget for the suites that enumerate blossoms
SUITE_CYCLE_CAP = 20_000


# ---------------------------------------------------------------------------
# Mutants for negative-control runs


def _printed_sign_expansion(G: Graph) -> int:
    """Sachs expansion with sign (-1)^(number of even cycles)."""

    total = 0
    for S in spectral.enumerate_sachs(G):
        even = sum(1 for c in S.cycles if len(c) % 2 == 0)
        total += (-1) ** even * 2 ** S.c
    return total


def _flipped_expansion(G: Graph) -> int:
    return spectral.sachs_weighted_sum(G, lambda S: -spectral.permutation_sign(S, G.n))


def _ker_without_tight_set(G: Graph, s: BABStructure, validate: bool = True) -> bab.FastCriticalSets:
    fast = bab.fast_critical_sets(G, s, validate=validate)
    return fast._replace(ker=fast.nucleus)


def _diadem_without_c(G: Graph, s: BABStructure, validate: bool = True) -> bab.FastCriticalSets:
    fast = bab.fast_critical_sets(G, s, validate=validate)
    return fast._replace(diadem=fast.nucleus)


@dataclass(frozen=True)
class Hooks:
    sachs_expansion: Callable[[Graph], int] = spectral.sachs_expansion
    fast_critical_sets: Callable[..., bab.FastCriticalSets] = bab.fast_critical_sets


MUTANTS: Dict[str, Hooks] = {
    "flip-sachs-sign": Hooks(sachs_expansion=_flipped_expansion),
    "printed-sachs-sign": Hooks(sachs_expansion=_printed_sign_expansion),
    "ker-without-tight-set": Hooks(fast_critical_sets=_ker_without_tight_set),
    "diadem-without-c": Hooks(fast_critical_sets=_diadem_without_c),
}


def hooks_for(mutant: Optional[str]) -> Hooks:
    if mutant is None:
        return Hooks()
    if mutant not in MUTANTS:
        raise ValueError(f"unknown mutant {mutant!r}; choose from {sorted(MUTANTS)}")
    return MUTANTS[mutant]


# ---------------------------------------------------------------------------
# Plans and corpora


@dataclass(frozen=True)
class VerifyPlan:
    exhaustive_n: Optional[int] = None
    random: int = 0
    max_n: int = 10
    seed: int = 0
    bab_count: int = 500
    bab_max_n: int = 16
    mutant: Optional[str] = None
    suites: Optional[Tuple[str, ...]] = None

    def check(self) -> None:
        if self.exhaustive_n is None and self.random <= 0:
            raise ValueError("choose an exhaustive size or a positive random count")
        if self.exhaustive_n is not None and not 1 <= self.exhaustive_n <= EXHAUSTIVE_MAX_N + 1:
            raise SizeGuardError("verify", self.exhaustive_n, EXHAUSTIVE_MAX_N + 1, what="exhaustive n")
        hooks_for(self.mutant)
        unknown = set(self.suites or ()) - set(SUITES)
        if unknown:
            raise ValueError(f"unknown suites {sorted(unknown)}")


@functools.lru_cache(maxsize=4)
def general_corpus(plan: VerifyPlan) -> Tuple[Graph, ...]:
    if plan.exhaustive_n is not None:
        graphs = list(all_graphs_up_to(min(plan.exhaustive_n, EXHAUSTIVE_MAX_N)))
        if plan.exhaustive_n > EXHAUSTIVE_MAX_N:
            graphs += list(atlas_graphs(plan.exhaustive_n, min_n=EXHAUSTIVE_MAX_N + 1))
        return tuple(graphs)
    return tuple(G for _, G in random_graphs(plan.seed, plan.random, plan.max_n))


def bab_instance(seed: int, max_n: int, attempts: int = 32) -> Tuple[Graph, BABStructure]:
    """A generated BAB instance with at most ``max_n`` vertices; parameters drawn from ``seed``."""

    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        k = int(rng.choice([0, 1, 1, 2, 2, 3]))
        depth = int(rng.integers(0, 3))
        params = GeneratorParams(
            k=k,
            bip_order=(0, int(rng.integers(0, 7))),
            cycle_len=(3, int(rng.choice([3, 5, 7]))),
            depth=depth,
            crossing=0.0 if depth == 0 else float(rng.uniform(0.1, 0.7)),
        )
        G, structure = generate_random_bab(int(rng.integers(0, 2**63)), params)
        if G.n <= max_n:
            return G, structure
    raise InfeasibleParametersError(f"no BAB instance with n <= {max_n} from seed {seed}")


@functools.lru_cache(maxsize=4)
def bab_corpus(plan: VerifyPlan) -> Tuple[Tuple[Graph, BABStructure], ...]:
    count = plan.bab_count if plan.exhaustive_n is not None else plan.random
    corpus = []
    for i in range(count):
        try:
            corpus.append(bab_instance(split_seed(plan.seed ^ 0xBAB, i), plan.bab_max_n))
        except InfeasibleParametersError as exc:
            logger.warning("%s", exc)
    logger.info("BAB corpus: %d instances (n <= %d)", len(corpus), plan.bab_max_n)
    return tuple(corpus)


# ---------------------------------------------------------------------------
# Results


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    skipped: int = 0
    violations: int = 0
    messages: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def record(self, problems: Sequence[str], label: str) -> None:
        self.instances += 1
        if problems:
            self.violations += 1
            if len(self.messages) < MAX_MESSAGES:
                self.messages.append(f"{label}: {'; '.join(problems)}")

    def to_dict(self) -> dict:
        data = asdict(self)
        data["passed"] = self.passed
        return data


def _label(G: Graph) -> str:
    return f"n={G.n} edges={[list(e) for e in G.edges]}"


def _run(result: SuiteResult, items, check: Callable[..., List[str]]) -> SuiteResult:
    for item in items:
        G = item[0] if isinstance(item, tuple) else item
        args = item if isinstance(item, tuple) else (item,)
        try:
            problems = check(*args)
        except SizeGuardError as exc:
            result.skipped += 1
            logger.debug("%s skipped %s: %s", result.name, _label(G), exc)
            continue
        except BABError as exc:
            problems = [f"{type(exc).__name__}: {exc}"]
        result.record(problems, _label(G))
    return result


# ---------------------------------------------------------------------------
# General-graph suites


def suite_zhang(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G):
        d, d_i = critical_difference(G), critical_independence_difference(G)
        return [] if d == d_i else [f"d={d} but d_I={d_i}"]

    return _run(SuiteResult("zhang-d-equals-dI"), general_corpus(plan), check)


def suite_critical_lattice(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    result = SuiteResult("critical-lattice")

    def check(G):
        problems = []
        prof = critical_profile(G)
        if not set(prof.ker) <= set(prof.core):
            problems.append(f"ker {list(prof.ker)} not inside core {list(prof.core)}")
        if not set(prof.nucleus) <= set(prof.diadem) and len(result.notes) < MAX_MESSAGES:
            result.notes.append(f"nucleus not inside diadem: {_label(G)}")
        dec = gallai_edmonds(G)
        D, A = set(dec.D), set(dec.A)
        critical = critical_independent_sets(G)
        for I in critical:
            if set(neighborhood(G, I)) & D:
                problems.append(f"N({list(I)}) meets D")
            if set(I) & A:
                problems.append(f"critical independent {list(I)} meets A")
        if not any(set(I) <= D for I in critical):
            problems.append("no critical independent set inside D")
        if G.n <= EXHAUSTIVE_MAX_N:
            sets = [set(X) for X in critical_difference_subsets(G)]
            for X, Z in itertools.combinations(sets, 2):
                for combined in (X | Z, X & Z):
                    if difference(G, combined) != prof.d:
                        problems.append(f"{sorted(combined)} from critical sets is not critical")
                        break
        return problems

    return _run(result, general_corpus(plan), check)


def suite_core_corona(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G):
        if G.n > 14:
            raise SizeGuardError("core_corona oracle", G.n, 14)
        core, corona = core_corona(G)
        omega = maximum_independent_sets(G)
        want_core = tuple(sorted(set.intersection(*(set(S) for S in omega))))
        want_corona = tuple(sorted(set.union(*(set(S) for S in omega))))
        problems = []
        if core != want_core:
            problems.append(f"core {list(core)} != {list(want_core)}")
        if corona != want_corona:
            problems.append(f"corona {list(corona)} != {list(want_corona)}")
        return problems

    return _run(SuiteResult("core-corona"), general_corpus(plan), check)


def _tight_oracle(G: Graph, a_part, i_part) -> List[set]:
    i_set = set(i_part)
    tight = []
    for r in range(len(a_part) + 1):
        for T in itertools.combinations(a_part, r):
            if len(set(neighborhood(G, T)) & i_set) == len(T):
                tight.append(set(T))
    return tight


def suite_tight_sets(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G):
        prof = critical_profile(G)
        problems = []
        for I in sorted({prof.critical_witness, prof.max_critical_witness, prof.ker}):
            a_part = neighborhood(G, I)
            if len(a_part) > 10:
                continue
            tight = _tight_oracle(G, a_part, I)
            largest = max(tight, key=len)
            fast = set(max_tight_set(G, a_part, I))
            if fast != largest:
                problems.append(f"max_tight_set({list(a_part)}, {list(I)}) = {sorted(fast)}, oracle {sorted(largest)}")
            for X, Z in itertools.combinations(tight, 2):
                if X | Z not in tight:
                    problems.append(f"tight sets {sorted(X)} and {sorted(Z)} have a non-tight union")
                    break
            if ker_hall_check(G, I) != (I == prof.ker):
                problems.append(f"ker_hall_check disagrees for {list(I)}")
        return problems

    return _run(SuiteResult("tight-sets"), general_corpus(plan), check)


def suite_berge_exchange(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G):
        if G.n > 8:
            raise SizeGuardError("berge exchange", G.n, 8)
        problems = []
        independent = independent_sets(G)
        for S in maximum_independent_sets(G):
            s_set = set(S)
            for I in independent:
                if not set(I) & s_set and not matchable_into(G, I, S):
                    problems.append(f"{list(I)} cannot be matched into {list(S)}")
        return problems[:3]

    return _run(SuiteResult("berge-exchange"), general_corpus(plan), check)


def suite_gallai_edmonds(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    flower = FIXTURES["FLOWER7"]

    def check(G):
        dec = gallai_edmonds(G)
        M = maximum_matching(G, verify=True)
        problems = validate_ge(G, dec, M)
        for comp in dec.components_of_d:
            if not is_factor_critical(induced_subgraph(G, comp)[0]):
                problems.append(f"component {list(comp)} of G[D] is not factor-critical")
        odd = enumerate_odd_cycles(G, cap=SUITE_CYCLE_CAP).cycles
        if len(odd) == 1 and not is_koenig_egervary(G):
            if tuple(sorted(odd[0])) not in dec.components_of_d:
                problems.append(f"unique odd cycle {list(odd[0])} is not a component of G[D]")
        if G.n <= 12:
            inside = set(dec.A)
            targets = [(u, v) for u in dec.A for v in dec.A + dec.C if u < v or v not in inside]
            for u, v in targets:
                if u != v and not G.has_edge(u, v):
                    if gallai_edmonds(G.add_edges([(u, v)])).D != dec.D:
                        problems.append(f"adding {u}-{v} changes D")
            union, offsets = disjoint_union([G, flower])
            base_d = gallai_edmonds(union).D
            for u in dec.A + dec.C:
                if gallai_edmonds(union.add_edges([(u, offsets[1] + 5)])).D != base_d:
                    problems.append(f"joining {u} to A(FLOWER7) changes D")
        return problems

    return _run(SuiteResult("gallai-edmonds"), general_corpus(plan), check)


def suite_sterboul(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G):
        enumerate_odd_cycles(G, cap=SUITE_CYCLE_CAP)
        ke = is_koenig_egervary(G)
        problems = []
        for M in all_maximum_matchings(G):
            cert = sterboul_certificate(G, M, cycle_cap=SUITE_CYCLE_CAP, check_maximum=False)
            if (cert is None) != ke:
                problems.append(f"KE={ke} but certificate {cert} for matching {list(M.edges)}")
                break
            if cert is not None:
                bad = validate_flower(G, M, cert) if isinstance(cert, FlowerCert) else validate_posy(G, M, cert)
                if bad:
                    problems.append(f"invalid certificate: {bad}")
                    break
        return problems

    return _run(SuiteResult("sterboul-certificates"), general_corpus(plan), check)


def suite_sachs_determinant(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    corpus = general_corpus(plan)

    def check(G, H):
        problems = []
        det = spectral.adjacency_determinant(G)
        expansion = hooks.sachs_expansion(G)
        if det != expansion:
            problems.append(f"Sachs expansion {expansion} != det {det}")
        if G.n + H.n <= 20:
            union = disjoint_union([G, H])[0]
            product = det * spectral.adjacency_determinant(H)
            if spectral.adjacency_determinant(union) != product:
                problems.append("det is not multiplicative over a disjoint union")
        return problems

    pairs = [(G, corpus[(i + 1) % len(corpus)]) for i, G in enumerate(corpus)]
    return _run(SuiteResult("sachs-determinant"), pairs, check)


def suite_sachs_existence(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G):
        found = spectral.has_sachs_subgraph(G, max_n=16)
        problems = []
        if not found.exists:
            S = found.certificate
            rest = induced_subgraph(G, [v for v in G.vertices if v not in S])[0]
            isolated = sum(1 for v in range(rest.n) if rest.degree(v) == 0)
            if isolated <= len(S):
                problems.append(f"certificate {list(S)} leaves only {isolated} isolated vertices")
        return problems

    return _run(SuiteResult("sachs-existence"), general_corpus(plan), check)


def suite_recognition(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G):
        odd = len(enumerate_odd_cycles(G, cap=SUITE_CYCLE_CAP))
        if odd == 0:
            return []
        report = is_r_disjoint(G)
        found = recognize_bab(G)
        if found.structure is None and not found.exhaustive:
            raise CapExceededError("recognize_bab", 100_000)
        problems = []
        lhs = found.structure is not None and found.structure.k == odd
        if lhs != bool(report):
            problems.append(f"recognized k={getattr(found.structure, 'k', None)} with {odd} odd cycles, R-disjoint={bool(report)}")
        if report:
            factor = spectral.check_flower_factorization(G)
            problems += factor.violations
        return problems

    return _run(SuiteResult("bab-recognition"), general_corpus(plan), check)


# ---------------------------------------------------------------------------
# BAB-corpus suites


def suite_bab_structure(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G, s):
        problems = bab.validate_structure(G, s)
        dec = gallai_edmonds(G)
        cycles = sorted(tuple(sorted(c)) for c in s.odd_cycles)
        nontrivial = sorted(c for c in dec.components_of_d if len(c) > 1)
        if nontrivial != cycles:
            problems.append(f"components of G[D] {nontrivial} are not the part cycles {cycles}")
        return problems

    return _run(SuiteResult("bab-structure"), bab_corpus(plan), check)


def suite_fast_path(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G, s):
        fast = hooks.fast_critical_sets(G, s, validate=False)
        prof = critical_profile(G)
        problems = []
        for name in ("nucleus", "diadem", "ker"):
            if getattr(fast, name) != getattr(prof, name):
                problems.append(f"{name}: fast {list(getattr(fast, name))} != oracle {list(getattr(prof, name))}")
        return problems

    return _run(SuiteResult("fast-critical-sets"), bab_corpus(plan), check)


def suite_theorems(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    result = SuiteResult("theorem-suite")
    strict = 0

    def check(G, s):
        nonlocal strict
        report = theorem_suite(G, s, validate=False)
        if report.clause("e").equality is False:
            strict += 1
        return [f"({c.name}) {c.detail}" for c in report.failures]

    _run(result, bab_corpus(plan), check)
    result.notes.append(f"instances with |corona|+|ker| < 2alpha+k: {strict}")
    return result


def suite_det_factorization(plan: VerifyPlan, hooks: Hooks) -> SuiteResult:
    def check(G, s):
        return spectral.check_det_factorization(G, s, validate=False).violations

    return _run(SuiteResult("det-factorization"), bab_corpus(plan), check)


SUITES: Dict[str, Callable[[VerifyPlan, Hooks], SuiteResult]] = {
    "zhang-d-equals-dI": suite_zhang,
    "critical-lattice": suite_critical_lattice,
    "core-corona": suite_core_corona,
    "tight-sets": suite_tight_sets,
    "berge-exchange": suite_berge_exchange,
    "gallai-edmonds": suite_gallai_edmonds,
    "sterboul-certificates": suite_sterboul,
    "sachs-determinant": suite_sachs_determinant,
    "sachs-existence": suite_sachs_existence,
    "bab-recognition": suite_recognition,
    "bab-structure": suite_bab_structure,
    "fast-critical-sets": suite_fast_path,
    "theorem-suite": suite_theorems,
    "det-factorization": suite_det_factorization,
}


def run_suite(plan: VerifyPlan, name: str) -> SuiteResult:
    logger.info("suite %s: start", name)
    result = SUITES[name](plan, hooks_for(plan.mutant))
    logger.info(
        "suite %s: %d instances, %d violations, %d skipped",
        name,
        result.instances,
        result.violations,
        result.skipped,
    )
    return result


def _run_named(job: Tuple[VerifyPlan, str]) -> SuiteResult:
    return run_suite(*job)


@dataclass
class VerificationReport:
    plan: VerifyPlan
    results: List[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failing(self) -> List[str]:
        return [r.name for r in self.results if not r.passed]

    def summary(self) -> pd.DataFrame:
        rows = [
            {
                "suite": r.name,
                "instances": r.instances,
                "violations": r.violations,
                "skipped": r.skipped,
                "passed": r.passed,
            }
            for r in self.results
        ]
        return pd.DataFrame(rows, columns=["suite", "instances", "violations", "skipped", "passed"])

    def to_dict(self) -> dict:
        return {
            "plan": asdict(self.plan),
            "passed": self.passed,
            "totalInstances": sum(r.instances for r in self.results),
            "suites": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def run_verification(plan: VerifyPlan, workers: int = 1) -> VerificationReport:
    """Run the selected suites; with ``workers > 1`` suites run in separate processes."""

    plan.check()
    names = list(plan.suites or SUITES)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_named, [(plan, name) for name in names]))
    else:
        results = [run_suite(plan, name) for name in names]
    return VerificationReport(plan, results)
