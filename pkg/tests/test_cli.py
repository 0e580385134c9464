import json

from src.bab import BABStructure, validate_structure
from src.cli import EXIT_GUARD, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, main
from src.graph import read_graph


def test_analyze_json(graph_dir, capsys):
    code = main(["analyze", str(graph_dir / "BAB9.txt"), "--json", "--oracle"])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["alpha"] == 4
    assert data["det"] == 2
    assert data["babStructure"]["B"] == [7, 8]
    assert data["nucleus"] == [6]


def test_analyze_text(graph_dir, capsys):
    assert main(["analyze", str(graph_dir / "C5.txt")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "alpha: 2" in out


def test_analyze_malformed_file(graph_dir, capsys):
    assert main(["analyze", str(graph_dir / "malformed.txt")]) == EXIT_INPUT
    assert "line 4" in capsys.readouterr().err


def test_analyze_missing_file(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "absent.txt")]) == EXIT_INPUT


def test_analyze_size_guard(graph_dir, capsys):
    assert main(["analyze", str(graph_dir / "BAB9.txt"), "--max-n", "5"]) == EXIT_GUARD
    assert "refused" in capsys.readouterr().err


def test_generate_writes_graph_and_sidecar(tmp_path, capsys):
    out = tmp_path / "g.txt"
    code = main(["generate", "--seed", "7", "--k", "2", "--cycle-len", "3-5", "--bip-order", "1-3", "--out", str(out)])
    assert code == EXIT_OK
    G = read_graph(out)
    assert out.read_text().startswith("# generated BAB instance, seed 7")
    sidecar = tmp_path / "g.txt.json"
    structure = BABStructure.from_json(sidecar.read_text(), G)
    assert structure.k == 2
    assert validate_structure(G, structure) == []


def test_generate_is_reproducible(tmp_path, capsys):
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["generate", "--seed", "3", "--config", "k=1 depth=2", "--out", str(first)]) == EXIT_OK
    assert main(["generate", "--seed", "3", "--config", "k=1 depth=2", "--out", str(second)]) == EXIT_OK
    assert first.read_text() == second.read_text()


def test_generate_infeasible(tmp_path, capsys):
    code = main(["generate", "--seed", "1", "--depth", "0", "--crossing", "0.5", "--out", str(tmp_path / "x.txt")])
    assert code == EXIT_GUARD


def test_verify_passes(capsys):
    assert main(["verify", "--exhaustive-n", "3", "--suite", "zhang-d-equals-dI", "--suite", "gallai-edmonds"]) == EXIT_OK
    assert "zhang-d-equals-dI" in capsys.readouterr().out


def test_verify_mutant_fails(capsys):
    code = main(["verify", "--exhaustive-n", "3", "--suite", "sachs-determinant", "--mutant", "flip-sachs-sign", "--json"])
    assert code == EXIT_VIOLATION
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is False


def test_verify_guard(capsys):
    assert main(["verify", "--exhaustive-n", "9"]) == EXIT_GUARD


def test_search_bab_source(tmp_path, capsys):
    code = main(
        ["search", "--trials", "3", "--seed", "11", "--max-n", "12", "--source", "bab", "--out", str(tmp_path), "--json"]
    )
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["source"] == "bab"
    assert data["findings"] == []
    assert (tmp_path / "manifest.json").exists()
