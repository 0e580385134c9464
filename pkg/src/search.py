"""Counterexample search for ``|corona(G)| + |ker(G)| <= 2α(G) + k``.

``k`` has three readings that are all evaluated: the number of odd cycles,
the number of odd cycles inside ``G[D]``, and the maximum number of pairwise
disjoint odd cycles. Instances come from a per-trial seed; a finding replays
from its seed, source and ``max_n``, all three recorded in the manifest.
Nothing here claims a proof; a clean run only means no counterexample was
sampled.
"""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import pandas as pd

from .errors import CapExceededError, InfeasibleParametersError, SizeGuardError
from .gallai_edmonds import gallai_edmonds
from .graph import Graph, enumerate_odd_cycles, induced_subgraph, to_mask, write_graph
from .independence import critical_profile
from .instances import random_instance, split_seed
from .verification import bab_instance

logger = logging.getLogger(__name__)

CONJECTURES = ("corona-ker-bound",)
SOURCES = ("random", "bab")
READINGS = ("all_odd_cycles", "odd_cycles_in_d", "disjoint_odd_cycles")
SEARCH_CYCLE_CAP = 200_000


def max_disjoint_odd_cycles(G: Graph, cycle_cap: Optional[int] = None, node_cap: int = 1_000_000) -> int:
    """Largest number of pairwise vertex-disjoint odd cycles, by branch and bound."""

    cycles = [to_mask(c) for c in enumerate_odd_cycles(G, cap=cycle_cap)]
    best = 0
    nodes = 0

    def go(i: int, used: int, count: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_cap:
            raise CapExceededError("max_disjoint_odd_cycles", node_cap)
        free = G.n - used.bit_count()
        if count + min(len(cycles) - i, free // 3) <= best:
            return
        best = max(best, count)
        if i == len(cycles):
            return
        if not cycles[i] & used:
            go(i + 1, used | cycles[i], count + 1)
        go(i + 1, used, count)

    go(0, 0, 0)
    return best


def k_readings(G: Graph, cycle_cap: Optional[int] = None) -> Dict[str, int]:
    dec = gallai_edmonds(G)
    inside_d = induced_subgraph(G, dec.D)[0]
    return {
        "all_odd_cycles": len(enumerate_odd_cycles(G, cap=cycle_cap)),
        "odd_cycles_in_d": len(enumerate_odd_cycles(inside_d, cap=cycle_cap)),
        "disjoint_odd_cycles": max_disjoint_odd_cycles(G, cycle_cap=cycle_cap),
    }


@dataclass
class Trial:
    seed: int
    source: str
    max_n: int
    n: int
    m: int
    alpha: int
    corona: int
    ker: int
    k: Dict[str, int]
    slack: Dict[str, int]
    structure_k: Optional[int] = None
    edges: List[List[int]] = field(default_factory=list, repr=False)

    @property
    def violated(self) -> List[str]:
        return [name for name, value in self.slack.items() if value < 0]

    @property
    def strict_witness(self) -> bool:
        """A BAB instance strictly below the bound for its structural ``k``."""

        return self.structure_k is not None and self.slack.get("structure", 0) > 0

    def graph(self) -> Graph:
        return Graph(self.n, tuple(tuple(e) for e in self.edges))


def build_instance(seed: int, source: str, max_n: int) -> Tuple[Graph, Optional[int]]:
    if source == "random":
        return random_instance(seed, max_n), None
    if source == "bab":
        G, structure = bab_instance(seed, max_n)
        return G, structure.k
    raise ValueError(f"unknown source {source!r}; choose from {SOURCES}")


def run_trial(seed: int, source: str = "random", max_n: int = 12) -> Trial:
    """Evaluate every ``k`` reading on the instance drawn from ``seed``."""

    G, structure_k = build_instance(seed, source, max_n)
    return evaluate_instance(G, seed, source, max_n, structure_k)


def evaluate_instance(
    G: Graph,
    seed: int,
    source: str,
    max_n: int,
    structure_k: Optional[int] = None,
) -> Trial:
    """Score ``G`` against every ``k`` reading; ``seed``, ``source`` and ``max_n`` are provenance."""

    prof = critical_profile(G)
    k = k_readings(G, cycle_cap=SEARCH_CYCLE_CAP)
    if structure_k is not None:
        k["structure"] = structure_k
    total = len(prof.corona) + len(prof.ker)
    slack = {name: 2 * prof.alpha + value - total for name, value in k.items()}
    return Trial(
        seed=seed,
        source=source,
        max_n=max_n,
        n=G.n,
        m=G.m,
        alpha=prof.alpha,
        corona=len(prof.corona),
        ker=len(prof.ker),
        k=k,
        slack=slack,
        structure_k=structure_k,
        edges=[list(e) for e in G.edges],
    )


def _safe_trial(job: Tuple[int, str, int]) -> Union[Trial, str]:
    seed, source, max_n = job
    try:
        return run_trial(seed, source, max_n)
    except (SizeGuardError, InfeasibleParametersError) as exc:
        return f"seed {seed}: {exc}"


@dataclass
class SearchReport:
    conjecture: str
    source: str
    seed: int
    max_n: int
    trials: List[Trial]
    skipped: List[str]

    @property
    def findings(self) -> List[Trial]:
        return [t for t in self.trials if t.violated]

    @property
    def witnesses(self) -> List[Trial]:
        return [t for t in self.trials if t.strict_witness]

    def table(self) -> pd.DataFrame:
        rows = []
        for t in self.trials:
            row = {"seed": t.seed, "n": t.n, "m": t.m, "alpha": t.alpha, "corona": t.corona, "ker": t.ker}
            row.update({f"k_{name}": value for name, value in t.k.items()})
            row.update({f"slack_{name}": value for name, value in t.slack.items()})
            rows.append(row)
        return pd.DataFrame(rows)

    def min_slack(self) -> Dict[str, Optional[int]]:
        frame = self.table()
        names = list(READINGS) + (["structure"] if self.source == "bab" else [])
        return {
            name: (int(frame[f"slack_{name}"].min()) if not frame.empty else None)
            for name in names
        }

    def to_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "source": self.source,
            "seed": self.seed,
            "max_n": self.max_n,
            "trials": len(self.trials),
            "skipped": len(self.skipped),
            "minSlack": self.min_slack(),
            "findings": [_finding(t) for t in self.findings],
            "strictWitnesses": [_finding(t) for t in self.witnesses[:10]],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _finding(t: Trial) -> dict:
    data = asdict(t)
    data.pop("edges")
    data["violated"] = t.violated
    return data


def run_search(
    trials: int,
    seed: int,
    max_n: int = 12,
    source: str = "random",
    conjecture: str = "corona-ker-bound",
    workers: int = 1,
) -> SearchReport:
    if conjecture not in CONJECTURES:
        raise ValueError(f"unknown conjecture {conjecture!r}; choose from {CONJECTURES}")
    if source not in SOURCES:
        raise ValueError(f"unknown source {source!r}; choose from {SOURCES}")
    jobs = [(split_seed(seed, i), source, max_n) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_safe_trial, jobs, chunksize=16))
    else:
        outcomes = [_safe_trial(job) for job in jobs]
    done = [o for o in outcomes if isinstance(o, Trial)]
    skipped = [o for o in outcomes if isinstance(o, str)]
    for message in skipped:
        logger.warning("search skipped %s", message)
    report = SearchReport(conjecture, source, seed, max_n, done, skipped)
    logger.info(
        "search: %d trials, %d skipped, %d findings, %d strict witnesses",
        len(done),
        len(skipped),
        len(report.findings),
        len(report.witnesses),
    )
    return report


def persist_findings(report: SearchReport, out_dir: Union[str, Path], witness_limit: int = 5) -> Path:
    """Write each finding (and a few strict witnesses) as a graph file plus ``manifest.json``."""

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    chosen = [("finding", t) for t in report.findings]
    chosen += [("witness", t) for t in report.witnesses[:witness_limit]]
    for kind, t in chosen:
        name = f"{kind}-{t.seed}.txt"
        comments = [
            f"{kind} for {report.conjecture}, source {t.source}, seed {t.seed}, max_n {t.max_n}",
            "slack " + " ".join(f"{k}={v}" for k, v in sorted(t.slack.items())),
        ]
        write_graph(out / name, t.graph(), comments)
        entry = _finding(t)
        entry.update({"kind": kind, "file": name})
        entries.append(entry)
    manifest = {
        "conjecture": report.conjecture,
        "source": report.source,
        "seed": report.seed,
        "max_n": report.max_n,
        "entries": entries,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=2), encoding="utf-8")
    report.table().to_csv(out / "summary.csv", index=False)
    logger.info("persisted %d entries to %s", len(entries), out)
    return out / "manifest.json"
