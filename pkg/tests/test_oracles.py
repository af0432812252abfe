import pytest

from netdecomp.coloring import Coloring, HPartition
from netdecomp.decompose import NetworkDecomposition
from netdecomp.generators import complete, cycle, grid, path, petersen, random_tree
from netdecomp.graph import build_graph
from netdecomp.oracles import (
    OracleCapError,
    brute_chromatic,
    brute_mds,
    brute_min_t_spanner,
    validate_all_pairs_stretch,
    validate_charging,
    validate_coloring,
    validate_decomposition,
    validate_domination,
    validate_h_partition,
    validate_stretch,
)


def wheel6():
    return build_graph(6, [(1, i) for i in range(2, 7)] + [(i, i % 5 + 2) for i in range(2, 7)])


def k33():
    return build_graph(6, [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)])


# Reference values from an independent brute-force script (networkx graphs,
# itertools enumeration), frozen here.
CASES = {
    "petersen": (petersen, 3, 3, 15, 15),
    "c7": (lambda: cycle(7), 3, 3, 7, 7),
    "k5": (lambda: complete(5), 5, 1, 4, 4),
    "p7": (lambda: path(7), 2, 3, 6, 6),
    "c6": (lambda: cycle(6), 2, 2, 6, 6),
    "wheel6": (wheel6, 4, 1, 5, 5),
    "k33": (k33, 2, 2, 9, 5),
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_exact_oracles_match_reference(name):
    make, chi, gamma, sp2, sp3 = CASES[name]
    g = make()
    got_chi, col = brute_chromatic(g)
    assert got_chi == chi and col.is_proper(g) and col.num_colors == chi
    size, dom = brute_mds(g)
    assert size == gamma and validate_domination(g, dom).passed
    for t, want in ((2, sp2), (3, sp3)):
        k, edges = brute_min_t_spanner(g, t)
        assert k == want == len(edges)
        assert validate_stretch(g, edges, t).passed


def test_grid_reference_values():
    g = grid(4, 4)
    assert brute_chromatic(g)[0] == 2
    assert brute_mds(g)[0] == 4


def test_caps():
    with pytest.raises(OracleCapError):
        brute_mds(path(30))
    with pytest.raises(OracleCapError):
        brute_min_t_spanner(complete(8), 2)


def test_validators_catch_planted_faults():
    g = path(4)
    assert validate_coloring(g, Coloring({1: 1, 2: 1, 3: 2, 4: 1}, 2)).rules() == {"proper-coloring"}
    assert validate_coloring(g, Coloring({1: 1}, 1)).rules() == {"uncolored"}
    assert validate_domination(g, [1]).violations == [("undominated", 3), ("undominated", 4)]
    h = HPartition.of([{1, 2, 3, 4}], 1)
    assert validate_h_partition(g, h).rules() == {"forward-degree"}
    assert validate_h_partition(g, HPartition.of([{1}], 9)).rules() == {"coverage"}
    assert validate_stretch(g, [(1, 2), (2, 3)], 5).rules() == {"stretch"}
    assert validate_stretch(g, [(1, 3)], 5).rules() >= {"not-subgraph"}


def test_decomposition_validator_rules():
    g = path(6)
    overlap = NetworkDecomposition((frozenset({1, 2}), frozenset({2, 3, 4, 5, 6})), (1, 2), (1, 3), 5, 2)
    assert validate_decomposition(g, overlap).rules() == {"partition"}
    too_wide = NetworkDecomposition((frozenset({1, 2, 3}), frozenset({4, 5, 6})), (1, 1), (1, 4), 1, 1)
    assert validate_decomposition(g, too_wide).rules() == {"diameter", "proper-labels"}
    split = NetworkDecomposition((frozenset({1, 3}), frozenset({2, 4, 5, 6})), (1, 2), (1, 2), 9, 1)
    assert validate_decomposition(g, split).rules() == {"diameter", "label-count"}
    close = NetworkDecomposition(
        (frozenset({1, 2}), frozenset({3}), frozenset({4, 5, 6})), (1, 2, 1), (1, 3, 4), 2, 2, sigma=3
    )
    assert validate_decomposition(g, close).rules() == {"separation"}
    bad_leader = NetworkDecomposition((frozenset(range(1, 7)),), (1,), (9,), 5, 1)
    assert validate_decomposition(g, bad_leader).rules() == {"leader"}


def test_charging_audit():
    g = path(5)
    bad = NetworkDecomposition((frozenset({1}), frozenset({2}), frozenset({3, 4, 5})), (1, 2, 1), (1, 2, 3), 2, 2)
    assert not validate_charging(g, bad).passed
    # {1} reaches {1, 2} and {4, 5} reaches {3, 4, 5}: disjoint
    ok = NetworkDecomposition((frozenset({1}), frozenset({2, 3}), frozenset({4, 5})), (1, 2, 1), (1, 2, 4), 1, 2)
    assert validate_charging(g, ok).passed
    fine = NetworkDecomposition((frozenset({1}), frozenset({2, 3, 4}), frozenset({5})), (1, 2, 1), (1, 2, 5), 2, 2)
    assert validate_charging(g, fine).passed


def test_edge_and_all_pairs_stretch_agree():
    for s in range(15):
        g = random_tree(12, s)
        extra = [(u, v) for u in range(1, 13) for v in range(u + 2, 13) if (u * 7 + v * s) % 11 == 0]
        g = build_graph(12, set(g.edges()) | set(extra))
        h = random_tree(12, s)
        h_edges = [e for e in g.edges() if h.has_edge(*e)] or list(g.edges())[:1]
        for t in (2, 3, 5):
            assert validate_stretch(g, h_edges, t).passed == validate_all_pairs_stretch(g, h_edges, t).passed
