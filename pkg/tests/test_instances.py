import pytest

from src.errors import SizeGuardError
from src.instances import (
    ATLAS_MAX_N,
    all_graphs,
    all_graphs_up_to,
    atlas_graphs,
    random_graph,
    random_graphs,
    random_instance,
    split_seed,
    splitmix64,
)


def test_splitmix64_reference_value():
    # first output of the reference generator seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_split_seed_is_deterministic_and_spread():
    seeds = [split_seed(7, i) for i in range(100)]
    assert seeds == [split_seed(7, i) for i in range(100)]
    assert len(set(seeds)) == 100
    assert split_seed(7, 0) != split_seed(8, 0)


def test_labelled_enumeration_counts():
    assert sum(1 for _ in all_graphs(3)) == 8
    assert sum(1 for _ in all_graphs(4)) == 64
    assert sum(1 for _ in all_graphs_up_to(3)) == 1 + 2 + 8
    with pytest.raises(SizeGuardError):
        next(all_graphs(7))


def test_atlas_counts():
    assert sum(1 for _ in atlas_graphs(4)) == 1 + 2 + 4 + 11
    assert sum(1 for _ in atlas_graphs(5, min_n=5)) == 34
    assert sum(1 for _ in atlas_graphs(ATLAS_MAX_N, min_n=7)) == 1044
    with pytest.raises(SizeGuardError):
        next(atlas_graphs(ATLAS_MAX_N + 1))


def test_random_graph_replays_from_seed():
    assert random_graph(11, 8, 0.5) == random_graph(11, 8, 0.5)
    assert random_graph(3, 6, 0.0).m == 0
    assert random_graph(3, 6, 1.0).m == 15


def test_random_instance_respects_bounds():
    for i in range(50):
        G = random_instance(split_seed(1, i), max_n=9, min_n=4)
        assert 4 <= G.n <= 9
    assert random_instance(5, 10) == random_instance(5, 10)


def test_random_graphs_yields_seeds():
    pairs = list(random_graphs(2, 5, max_n=6))
    assert [seed for seed, _ in pairs] == [split_seed(2, i) for i in range(5)]
    assert all(G == random_instance(seed, 6) for seed, G in pairs)
