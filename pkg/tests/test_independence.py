import pytest

from src.errors import HallConditionError, NotCriticalError, SizeGuardError
from src.graph import FIXTURES, Graph, complete_graph
from src.instances import atlas_graphs
from src.independence import (
    alpha,
    core_corona,
    critical_difference,
    critical_difference_subsets,
    critical_independence_difference,
    critical_independent_sets,
    critical_profile,
    difference,
    hall_holds,
    independent_sets,
    is_critical_independent,
    is_independent,
    ker_hall_check,
    matchable_into,
    max_tight_set,
    maximum_independent_sets,
    subset_table,
)


@pytest.mark.parametrize(
    "name, size, witness",
    [
        ("K1", 1, (0,)),
        ("K2", 1, (0,)),
        ("P4", 2, (0, 2)),
        ("C5", 2, (0, 2)),
        ("K13", 3, (1, 2, 3)),
        ("FLOWER7", 3, (0, 2, 6)),
        ("BAB9", 4, (0, 2, 6, 7)),
    ],
)
def test_alpha_and_lex_least_witness(name, size, witness):
    result = alpha(FIXTURES[name])
    assert result.size == size
    assert result.witness == witness
    assert is_independent(FIXTURES[name], result.witness)


def test_alpha_matches_enumeration():
    for G in atlas_graphs(6):
        sets = maximum_independent_sets(G)
        result = alpha(G)
        assert result.size == len(sets[0])
        assert result.witness == sets[0]


def test_alpha_size_guard():
    with pytest.raises(SizeGuardError):
        alpha(complete_graph(3), max_n=2)
    assert alpha(Graph(0, ())).size == 0


def test_difference_and_subset_table():
    K13 = FIXTURES["K13"]
    assert difference(K13, [1, 2, 3]) == 2
    assert difference(K13, [0]) == -2
    table = subset_table(K13)
    assert table.size[0b1110] == 3
    assert table.nbr[0b1110] == 0b0001
    assert bool(table.independent[0b1110])
    assert not bool(table.independent[0b0011])


def test_critical_differences():
    assert critical_difference(FIXTURES["K13"]) == 2
    assert critical_difference(FIXTURES["C5"]) == 0
    assert critical_difference(FIXTURES["P3"]) == 1
    assert critical_difference_subsets(FIXTURES["K13"]) == [(1, 2, 3)]
    for G in atlas_graphs(6):
        assert critical_difference(G) == critical_independence_difference(G)


def test_set_enumerations():
    P3 = FIXTURES["P3"]
    assert independent_sets(P3) == [(), (0,), (0, 2), (1,), (2,)]
    assert maximum_independent_sets(P3) == [(0, 2)]
    assert critical_independent_sets(P3) == [(0, 2)]
    assert critical_independent_sets(FIXTURES["K2"]) == [(), (0,), (1,)]
    assert is_critical_independent(P3, [0, 2])
    assert not is_critical_independent(P3, [0])
    assert not is_critical_independent(P3, [0, 1])


def test_core_corona():
    assert core_corona(FIXTURES["K13"]) == ((1, 2, 3), (1, 2, 3))
    assert core_corona(FIXTURES["C5"]) == ((), (0, 1, 2, 3, 4))
    assert core_corona(FIXTURES["BAB9"]) == ((), tuple(range(9)))
    for G in atlas_graphs(6):
        prof = critical_profile(G)
        assert core_corona(G) == (prof.core, prof.corona)


def test_critical_profile_on_fixtures():
    K13 = critical_profile(FIXTURES["K13"])
    assert (K13.alpha, K13.d, K13.d_independent) == (3, 2, 2)
    assert K13.ker == K13.nucleus == K13.diadem == (1, 2, 3)

    C5 = critical_profile(FIXTURES["C5"])
    assert C5.d == 0
    assert C5.ker == C5.nucleus == C5.diadem == ()
    assert C5.critical_witness == ()

    flower = critical_profile(FIXTURES["FLOWER7"])
    assert flower.alpha == 3
    assert flower.nucleus == flower.diadem == (6,)
    assert flower.ker == ()

    bab = critical_profile(FIXTURES["BAB9"])
    assert bab.alpha == 4
    assert bab.ker == bab.core == ()
    assert bab.nucleus == (6,)
    assert bab.diadem == (6, 7, 8)
    assert bab.corona == tuple(range(9))


def test_critical_lattice_inclusions():
    for G in atlas_graphs(6):
        prof = critical_profile(G)
        assert set(prof.ker) <= set(prof.nucleus) <= set(prof.diadem)
        assert set(prof.ker) <= set(prof.core)
        assert set(prof.core) <= set(prof.corona)


def test_oracle_guard():
    with pytest.raises(SizeGuardError):
        critical_profile(complete_graph(5), max_n=4)


def test_hall_machinery():
    P4 = FIXTURES["P4"]
    assert hall_holds(P4, [0, 2], [1, 3])
    assert not hall_holds(FIXTURES["K13"], [1, 2], [0])
    assert matchable_into(P4, [0, 2], [1, 2, 3])
    assert not matchable_into(FIXTURES["K13"], [1, 2, 3], [0])


def test_max_tight_set():
    BAB9 = FIXTURES["BAB9"]
    assert max_tight_set(BAB9, [5], [6]) == (5,)
    assert max_tight_set(FIXTURES["K13"], [0], [1, 2, 3]) == ()
    assert max_tight_set(FIXTURES["P4"], [1, 2], [0, 3]) == (1, 2)
    assert max_tight_set(FIXTURES["P4"], [], [0]) == ()
    with pytest.raises(HallConditionError):
        max_tight_set(FIXTURES["K13"], [1, 2], [0])
    with pytest.raises(ValueError):
        max_tight_set(FIXTURES["P4"], [1], [1, 2])


def test_ker_hall_check():
    assert ker_hall_check(FIXTURES["K13"], [1, 2, 3])
    assert ker_hall_check(FIXTURES["K2"], [])
    assert not ker_hall_check(FIXTURES["K2"], [0])
    with pytest.raises(NotCriticalError):
        ker_hall_check(FIXTURES["K2"], [0, 1])
    with pytest.raises(NotCriticalError):
        ker_hall_check(FIXTURES["P3"], [0])


def test_ker_hall_check_identifies_ker():
    for G in atlas_graphs(5):
        prof = critical_profile(G)
        for I in critical_independent_sets(G):
            assert ker_hall_check(G, I) is (I == prof.ker), (G.edges, I)
