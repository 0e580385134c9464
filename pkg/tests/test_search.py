import json

import pandas as pd
import pytest

from src.graph import FIXTURES, Graph, complete_graph, read_graph
from src.reporting import analyze_graph, oracle_check
from src.search import (
    READINGS,
    SearchReport,
    evaluate_instance,
    k_readings,
    max_disjoint_odd_cycles,
    persist_findings,
    run_search,
    run_trial,
)


def test_disjoint_odd_cycles():
    assert max_disjoint_odd_cycles(FIXTURES["DUMBBELL6"]) == 2
    assert max_disjoint_odd_cycles(FIXTURES["C4"]) == 0
    assert max_disjoint_odd_cycles(complete_graph(6)) == 2


def test_k_readings():
    assert k_readings(FIXTURES["DUMBBELL6"]) == {
        "all_odd_cycles": 2,
        "odd_cycles_in_d": 0,
        "disjoint_odd_cycles": 2,
    }
    assert k_readings(FIXTURES["BAB9"]) == {
        "all_odd_cycles": 1,
        "odd_cycles_in_d": 1,
        "disjoint_odd_cycles": 1,
    }


def test_trial_replays_from_seed():
    first = run_trial(123, "random", 8)
    second = run_trial(123, "random", 8)
    assert first == second
    assert set(first.k) == set(READINGS)
    assert first.graph().n == first.n
    total = first.corona + first.ker
    assert all(first.slack[name] == 2 * first.alpha + first.k[name] - total for name in READINGS)


def test_bab_source_respects_the_structural_bound():
    report = run_search(trials=6, seed=5, max_n=12, source="bab")
    assert report.trials
    for trial in report.trials:
        assert trial.structure_k is not None
        assert trial.slack["structure"] >= 0
    assert report.findings == []


def test_search_report_and_persistence(tmp_path):
    report = run_search(trials=10, seed=2, max_n=7)
    assert len(report.trials) + len(report.skipped) == 10
    table = report.table()
    assert isinstance(table, pd.DataFrame)
    assert len(table) == len(report.trials)
    assert set(report.min_slack()) == set(READINGS)
    data = json.loads(report.to_json())
    assert data["trials"] == len(report.trials)

    manifest = persist_findings(report, tmp_path / "out")
    data = json.loads(manifest.read_text())
    assert data["max_n"] == 7
    entries = data["entries"]
    assert len(entries) == len(report.findings) + min(5, len(report.witnesses))
    for entry in entries:
        assert (tmp_path / "out" / entry["file"]).exists()
        replayed = run_trial(entry["seed"], data["source"], data["max_n"])
        assert replayed.graph() == read_graph(tmp_path / "out" / entry["file"])
    assert (tmp_path / "out" / "summary.csv").exists()


def test_unknown_source_and_conjecture():
    with pytest.raises(ValueError):
        run_search(trials=1, seed=0, source="atlas")
    with pytest.raises(ValueError):
        run_search(trials=1, seed=0, conjecture="other")


STRICT7 = Graph.from_edges(7, [(0, 1), (0, 2), (1, 2), (0, 3), (3, 4), (3, 5), (3, 6), (5, 6)])


def test_strict_instance_is_persisted_and_rechecked(tmp_path):
    trial = evaluate_instance(STRICT7, seed=0, source="bab", max_n=7, structure_k=1)
    assert (trial.alpha, trial.corona, trial.ker) == (3, 6, 0)
    assert trial.slack["structure"] == 1
    assert trial.strict_witness
    assert trial.violated == []

    report = SearchReport("corona-ker-bound", "bab", 0, 7, [trial], [])
    manifest = persist_findings(report, tmp_path)
    entries = json.loads(manifest.read_text())["entries"]
    assert [(e["kind"], e["file"], e["max_n"]) for e in entries] == [("witness", "witness-0.txt", 7)]
    G = read_graph(tmp_path / "witness-0.txt")
    assert G == STRICT7
    assert oracle_check(G, analyze_graph(G)) == []


def test_bab_search_finds_a_strict_witness(tmp_path):
    report = run_search(trials=300, seed=3, source="bab")
    assert all(t.slack["structure"] >= 0 for t in report.trials)
    assert report.witnesses
    witness = report.witnesses[0]
    assert witness.slack["structure"] > 0
    assert "structure" not in witness.violated

    manifest = persist_findings(report, tmp_path)
    data = json.loads(manifest.read_text())
    entry = next(e for e in data["entries"] if e["seed"] == witness.seed)
    assert run_trial(entry["seed"], data["source"], data["max_n"]) == witness
    G = read_graph(tmp_path / entry["file"])
    assert G == witness.graph()
    assert oracle_check(G, analyze_graph(G)) == []


def test_trial_records_its_max_n():
    small = run_trial(123, "random", 3)
    assert small.n <= 3
    assert small.max_n == 3
    assert run_trial(123, "random", 3) == small
