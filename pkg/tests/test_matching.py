import itertools

import pytest

from src.errors import CapExceededError, InvalidGraphError, NotMaximumMatchingError
from src.graph import FIXTURES, Graph, complete_graph, cycle_graph
from src.instances import atlas_graphs
from src.matching import (
    FlowerCert,
    Matching,
    PosyCert,
    all_maximum_matchings,
    blossom_base,
    classify_alternating_path,
    deficiency,
    find_augmenting_path,
    is_koenig_egervary,
    is_matching_of,
    matching_number,
    maximum_matching,
    sterboul_certificate,
    validate_flower,
    validate_posy,
)


def test_matching_view():
    M = Matching.from_edges(5, [(1, 0), (3, 2)])
    assert M.edges == ((0, 1), (2, 3))
    assert M.size == 2
    assert M.exposed == (4,)
    assert M.deficiency == 1
    assert M.partner(3) == 2
    assert M.partner(4) == 4
    assert M.is_matched_edge(1, 0)
    assert not M.is_matched_edge(1, 2)
    assert M.restrict([0, 1, 2]) == [(0, 1)]
    with pytest.raises(InvalidGraphError):
        Matching.from_edges(3, [(0, 1), (1, 2)])


@pytest.mark.parametrize(
    "name, mu",
    [("K1", 0), ("K2", 1), ("P3", 1), ("P4", 2), ("C5", 2), ("K13", 1), ("FLOWER7", 3), ("BAB9", 4)],
)
def test_matching_number_on_fixtures(name, mu):
    G = FIXTURES[name]
    M = maximum_matching(G, verify=True)
    assert is_matching_of(G, M)
    assert M.size == matching_number(G) == mu
    assert deficiency(G) == G.n - 2 * mu


def test_augmenting_path_found_and_rejected():
    P4 = FIXTURES["P4"]
    M = Matching.from_edges(4, [(1, 2)])
    assert find_augmenting_path(P4, M) == (0, 1, 2, 3)
    with pytest.raises(NotMaximumMatchingError) as info:
        sterboul_certificate(P4, M)
    assert info.value.path == (0, 1, 2, 3)
    assert find_augmenting_path(P4, Matching.from_edges(4, [(0, 1), (2, 3)])) is None


def test_all_maximum_matchings_small_cases():
    assert [M.edges for M in all_maximum_matchings(FIXTURES["C4"])] == [
        ((0, 1), (2, 3)),
        ((0, 3), (1, 2)),
    ]
    assert [M.edges for M in all_maximum_matchings(FIXTURES["K3"])] == [((0, 1),), ((0, 2),), ((1, 2),)]
    assert [M.edges for M in all_maximum_matchings(FIXTURES["K1"])] == [()]
    with pytest.raises(CapExceededError):
        all_maximum_matchings(cycle_graph(6), cap=1)


def _brute_force_maximum_matchings(G):
    mu = matching_number(G)
    found = []
    for edges in itertools.combinations(G.edges, mu):
        touched = [v for e in edges for v in e]
        if len(set(touched)) == len(touched):
            found.append(tuple(sorted(edges)))
    return sorted(found)


def test_all_maximum_matchings_agrees_with_brute_force():
    for G in atlas_graphs(6):
        assert [M.edges for M in all_maximum_matchings(G)] == _brute_force_maximum_matchings(G)


def test_alternating_path_classification():
    M = Matching.from_edges(6, [(0, 1), (2, 3)])
    assert classify_alternating_path((0, 1, 2, 3), M) == "mm"
    assert classify_alternating_path((4, 0, 1, 5), M) == "nn"
    assert classify_alternating_path((0, 1, 5), M) == "mn"
    assert classify_alternating_path((5, 1, 0), M) == "nm"
    assert classify_alternating_path((0, 1, 2, 4), M) is None
    assert classify_alternating_path((0,), M) is None


def test_blossom_base():
    M = Matching.from_edges(7, [(0, 1), (2, 3), (5, 6)])
    assert blossom_base((0, 1, 2, 3, 4), M) == 4
    assert blossom_base((0, 1, 2, 3), M) is None
    assert blossom_base((0, 1, 2, 3, 4), Matching.from_edges(7, [(0, 1)])) is None


def test_flower_with_empty_stem():
    G = FIXTURES["FLOWER7"]
    M = Matching.from_edges(7, [(0, 1), (2, 3), (5, 6)])
    cert = sterboul_certificate(G, M)
    assert cert == FlowerCert(blossom=(0, 1, 2, 3, 4), base=4, stem=(4,), root=4)
    assert cert.stem_length == 0
    assert validate_flower(G, M, cert) == []


def test_flower_with_stem_of_length_two():
    G = FIXTURES["FLOWER7"]
    M = Matching.from_edges(7, [(0, 5), (1, 2), (3, 4)])
    cert = sterboul_certificate(G, M)
    assert isinstance(cert, FlowerCert)
    assert cert.base == 0
    assert cert.stem == (0, 5, 6)
    assert cert.root == 6
    assert cert.vertices == tuple(range(7))
    assert validate_flower(G, M, cert) == []

    tampered = FlowerCert(blossom=cert.blossom, base=0, stem=(0, 5), root=5)
    assert validate_flower(G, M, tampered)


def test_posy_on_dumbbell():
    G = FIXTURES["DUMBBELL6"]
    M = Matching.from_edges(6, [(0, 3), (1, 2), (4, 5)])
    cert = sterboul_certificate(G, M)
    assert cert == PosyCert(blossom_a=(0, 1, 2), blossom_b=(3, 4, 5), path=(0, 3))
    assert validate_posy(G, M, cert) == []
    assert validate_posy(G, M, PosyCert((0, 1, 2), (3, 4, 5), (0, 1, 2, 3)))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_posy_with_overlapping_blossoms_on_k4(n):
    G = Graph.from_edges(n, list(complete_graph(4).edges))
    M = Matching.from_edges(n, [(0, 1), (2, 3)])
    assert not is_koenig_egervary(G)
    cert = sterboul_certificate(G, M)
    assert cert == PosyCert(blossom_a=(0, 1, 2), blossom_b=(0, 1, 3), path=(2, 3))
    assert validate_posy(G, M, cert) == []
    assert validate_posy(G, M, PosyCert((0, 1, 2), (0, 1, 2), (2, 2)))


def test_certificate_rejects_foreign_matching():
    with pytest.raises(InvalidGraphError):
        sterboul_certificate(FIXTURES["P3"], Matching.from_edges(3, [(0, 2)]))


def test_no_certificate_on_bipartite_graphs():
    for name in ("P4", "C4", "K13"):
        G = FIXTURES[name]
        assert sterboul_certificate(G, maximum_matching(G)) is None


@pytest.mark.parametrize(
    "name, expected",
    [("P4", True), ("C4", True), ("K13", True), ("K1", True), ("C5", False), ("FLOWER7", False), ("BAB9", False)],
)
def test_koenig_egervary(name, expected):
    assert is_koenig_egervary(FIXTURES[name]) is expected


def test_certificate_exists_exactly_for_non_ke_graphs():
    for G in atlas_graphs(7):
        cert = sterboul_certificate(G, maximum_matching(G), check_maximum=False)
        assert (cert is None) == is_koenig_egervary(G), G.edges


def test_empty_graph_matching():
    G = Graph(3, ())
    assert maximum_matching(G).edges == ()
    assert sterboul_certificate(G, maximum_matching(G)) is None
