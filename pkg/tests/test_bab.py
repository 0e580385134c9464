import pytest

from src.bab import (
    BABStructure,
    GeneratorParams,
    assemble_bab,
    crossing_edges_of,
    fast_critical_sets,
    flower_decomposition,
    generate_random_bab,
    is_r_disjoint,
    reach_set,
    recognize_bab,
    validate_structure,
)
from src.errors import InfeasibleParametersError, SizeGuardError, StructureError
from src.graph import FIXTURES, Graph, is_connected, relabel
from src.independence import critical_profile

BAB9_STRUCTURE = BABStructure(
    b=(7, 8),
    parts=((0, 1, 2, 3, 4, 5, 6),),
    odd_cycles=((0, 1, 2, 3, 4),),
    crossing_edges=((5, 7),),
)


def test_reach_set_covers_the_flower():
    r = reach_set(FIXTURES["FLOWER7"], (0, 1, 2, 3, 4))
    assert r.cycle == (0, 1, 2, 3, 4)
    assert r.vertices == tuple(range(7))
    assert r.flower_count > 0
    assert reach_set(FIXTURES["BAB9"], (4, 3, 2, 1, 0)).vertices == tuple(range(7))
    with pytest.raises(StructureError):
        reach_set(FIXTURES["C4"], (0, 1, 2, 3))
    with pytest.raises(SizeGuardError):
        reach_set(FIXTURES["FLOWER7"], (0, 1, 2, 3, 4), max_n=5)


def test_r_disjoint_reports():
    assert is_r_disjoint(FIXTURES["FLOWER7"])
    assert is_r_disjoint(FIXTURES["BAB9"])
    bipartite = is_r_disjoint(FIXTURES["C4"])
    assert not bipartite
    assert bipartite.reason == "no odd cycle"
    dumbbell = is_r_disjoint(FIXTURES["DUMBBELL6"])
    assert not dumbbell
    assert dumbbell.reason == "empty reach set"


def test_flower_decomposition():
    dec = flower_decomposition(FIXTURES["BAB9"])
    assert dec.k == 1
    assert dec.b == (7, 8)
    assert dec.reach_sets[0].vertices == tuple(range(7))
    assert flower_decomposition(FIXTURES["C4"]).b == (0, 1, 2, 3)
    with pytest.raises(StructureError):
        flower_decomposition(FIXTURES["DUMBBELL6"])


def test_structure_serialization():
    s = BAB9_STRUCTURE
    assert s.k == 1
    assert s.block_of()[7] == 0
    assert s.block_of()[5] == 1
    assert s.to_dict() == {"B": [7, 8], "parts": [[0, 1, 2, 3, 4, 5, 6]], "crossing": [[5, 7]], "k": 1}
    assert BABStructure.from_json(s.to_json(), FIXTURES["BAB9"]) == s
    with pytest.raises(StructureError):
        BABStructure.from_json('{"B": [], "parts": [[0, 1, 2]], "crossing": [], "k": 2}')


def test_validate_structure():
    G = FIXTURES["BAB9"]
    assert validate_structure(G, BAB9_STRUCTURE) == []
    assert crossing_edges_of(G, [BAB9_STRUCTURE.b, *BAB9_STRUCTURE.parts]) == ((5, 7),)

    wrong_partition = BABStructure(b=(8,), parts=BAB9_STRUCTURE.parts, odd_cycles=BAB9_STRUCTURE.odd_cycles, crossing_edges=())
    assert validate_structure(G, wrong_partition) == ["B and the parts do not partition V(G)"]

    wrong_crossing = BABStructure(
        b=BAB9_STRUCTURE.b, parts=BAB9_STRUCTURE.parts, odd_cycles=BAB9_STRUCTURE.odd_cycles, crossing_edges=()
    )
    assert validate_structure(G, wrong_crossing)

    # the pendant vertex 6 is in D(G_1), so 6-7 is not an allowed crossing edge
    H = Graph.from_edges(9, list(G.edges[:-2]) + [(6, 7), (7, 8)])
    bad_endpoint = BABStructure(
        b=(7, 8), parts=BAB9_STRUCTURE.parts, odd_cycles=BAB9_STRUCTURE.odd_cycles, crossing_edges=((6, 7),)
    )
    assert any("crossing endpoint 6" in p for p in validate_structure(H, bad_endpoint))


def test_assemble_reproduces_bab9():
    G, s = assemble_bab(FIXTURES["K2"], [FIXTURES["FLOWER7"]], [(0, 5, "B", 0)])
    assert s.b == (0, 1)
    assert s.parts == ((2, 3, 4, 5, 6, 7, 8),)
    assert s.crossing_edges == ((0, 7),)
    assert s.odd_cycles == ((2, 3, 4, 5, 6),)
    assert s.connected
    assert relabel(G, [7, 8, 0, 1, 2, 3, 4, 5, 6]) == FIXTURES["BAB9"]


def test_assemble_rejects_bad_endpoints_and_blocks():
    with pytest.raises(StructureError) as info:
        assemble_bab(FIXTURES["K2"], [FIXTURES["FLOWER7"]], [(0, 6, "B", 0)])
    assert "endpoint 6" in str(info.value)
    with pytest.raises(StructureError):
        assemble_bab(FIXTURES["K3"], [])
    with pytest.raises(StructureError):
        assemble_bab(FIXTURES["K2"], [FIXTURES["C4"]])
    with pytest.raises(StructureError):
        assemble_bab(FIXTURES["K2"], [FIXTURES["FLOWER7"]], [(0, 5, 0, 5)])
    with pytest.raises(StructureError):
        assemble_bab(FIXTURES["K2"], [FIXTURES["FLOWER7"]], [("X", 0, "B", 0)])


def test_assemble_bare_cycle_without_bipartite_block():
    G, s = assemble_bab(Graph(0, ()), [FIXTURES["C5"]], [])
    assert G == FIXTURES["C5"]
    assert s.k == 1
    assert s.b == ()


def test_recognize_fixtures():
    found = recognize_bab(FIXTURES["BAB9"])
    assert found.exhaustive
    assert found.structure.b == (7, 8)
    assert found.structure.parts == (tuple(range(7)),)
    assert found.structure.crossing_edges == ((5, 7),)

    bipartite = recognize_bab(FIXTURES["C4"]).structure
    assert bipartite.k == 0
    assert bipartite.b == (0, 1, 2, 3)

    assert recognize_bab(FIXTURES["K3"]).structure.parts == ((0, 1, 2),)
    assert recognize_bab(FIXTURES["DUMBBELL6"]) == (None, True)


def test_fast_critical_sets():
    fast = fast_critical_sets(FIXTURES["BAB9"], BAB9_STRUCTURE)
    assert fast.nucleus == (6,)
    assert fast.diadem == (6, 7, 8)
    assert fast.ker == ()
    assert fast.tight_set == (5,)

    K13 = FIXTURES["K13"]
    star = recognize_bab(K13).structure
    fast = fast_critical_sets(K13, star)
    assert fast.nucleus == fast.ker == (1, 2, 3)
    assert fast.tight_set == ()


def test_fast_critical_sets_rejects_invalid_structure():
    broken = BABStructure(b=(7, 8), parts=BAB9_STRUCTURE.parts, odd_cycles=BAB9_STRUCTURE.odd_cycles, crossing_edges=())
    with pytest.raises(StructureError):
        fast_critical_sets(FIXTURES["BAB9"], broken)


def test_generator_params_from_config():
    params = GeneratorParams.from_config("k=2 bip_order=1-3, cycle_len=3..5 depth=2 crossing=0 allow_disconnected=no")
    assert params == GeneratorParams(k=2, bip_order=(1, 3), cycle_len=(3, 5), depth=2, crossing=0.0, allow_disconnected=False)
    assert GeneratorParams.from_config({"bip_order": 5}).bip_order == (5, 5)
    with pytest.raises(InfeasibleParametersError):
        GeneratorParams.from_config("colour=red")
    with pytest.raises(InfeasibleParametersError):
        GeneratorParams.from_config("bip_order=7-3")


@pytest.mark.parametrize(
    "params",
    [
        GeneratorParams(crossing=0.5, depth=0),
        GeneratorParams(cycle_len=(4, 4)),
        GeneratorParams(crossing=1.5),
        GeneratorParams(k=2, depth=0, crossing=0.0, allow_disconnected=False),
    ],
)
def test_infeasible_generator_params(params):
    with pytest.raises(InfeasibleParametersError):
        generate_random_bab(1, params)


def test_generator_is_deterministic_and_valid():
    params = GeneratorParams(k=2, bip_order=(0, 3), cycle_len=(3, 3), depth=1, crossing=0.4)
    G1, s1 = generate_random_bab(17, params)
    G2, s2 = generate_random_bab(17, params)
    assert G1 == G2
    assert s1 == s2
    assert s1.k == 2
    assert validate_structure(G1, s1) == []


def test_generator_connected_option():
    params = GeneratorParams(k=1, bip_order=(2, 4), cycle_len=(3, 5), depth=1, crossing=0.6, allow_disconnected=False)
    G, s = generate_random_bab(4, params)
    assert s.connected
    assert is_connected(G)


@pytest.mark.parametrize("seed", range(6))
def test_fast_path_agrees_with_oracle_on_generated_instances(seed):
    params = GeneratorParams(k=1 + seed % 2, bip_order=(0, 3), cycle_len=(3, 5), depth=1, crossing=0.5)
    G, s = generate_random_bab(seed, params)
    prof = critical_profile(G, max_n=20)
    fast = fast_critical_sets(G, s)
    assert (fast.nucleus, fast.diadem, fast.ker) == (prof.nucleus, prof.diadem, prof.ker)
