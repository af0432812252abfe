import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netdecomp.coloring import (
    C_LIN,
    C_UF,
    Coloring,
    ColoringError,
    HPartition,
    arb_linial_color,
    build_union_free,
    effective_h_partition,
    h_partition_random_color,
    is_union_free,
    linial_color,
    linial_reduce,
    orient_parents,
    peel_h_partition,
    random_color,
)
from netdecomp.generators import complete, cycle, gnp, grid, path, petersen, random_tree, star
from netdecomp.graph import build_graph
from netdecomp.oracles import validate_coloring
from netdecomp.sim import SimConfig


def test_coloring_rejects_out_of_palette():
    with pytest.raises(ColoringError):
        Coloring({1: 3}, 2)
    col = Coloring({1: 1, 2: 1}, 2)
    assert col.conflicts(build_graph(3, [(1, 2)])) == [(3, 3), (1, 2)]
    assert Coloring.from_dict(col.to_dict()) == col


def test_union_free_small_cases():
    # 3 sets, delta 2: q must exceed 2*d and q**(d+1) >= 3 -> q=3, d=1
    fam = build_union_free(3, 2)
    assert (fam.q, fam.degree, fam.ground_size) == (3, 1, 9)
    assert is_union_free(fam.sets, 2)
    assert all(len(s) == fam.q for s in fam.sets)
    with pytest.raises(ColoringError):
        build_union_free(2, 2)


def test_is_union_free_detects_cover():
    sets = [frozenset({1, 2}), frozenset({1}), frozenset({2})]
    assert not is_union_free(sets, 2)
    assert is_union_free(sets, 0)
    assert not is_union_free([frozenset()], 0)


def test_union_free_ground_constant():
    for d in range(0, 5):
        for p in range(d + 1, 33):
            fam = build_union_free(p, d)
            assert fam.ground_size <= C_UF * (d + 1) ** 2 * (1 + math.log(p))


def test_linial_one_round_on_star():
    # K_{1,9}: delta 9, ids up to 10 -> q = 11 (prime > 9), ground 121
    g = star(10)
    col, led = linial_color(g, 1)
    assert col.palette == 121 and led.total == 1
    assert col.is_proper(g)


def test_linial_fixpoint_keeps_small_palette():
    # ground for delta 2 is at least 25 > 5, so no round helps on C5
    col, led = linial_color(cycle(5))
    assert col.palette == 5 and led.total == 0
    assert col.is_proper(cycle(5))


def test_linial_edgeless_graph():
    col, led = linial_color(build_graph(4, []))
    assert col.palette == 1 and led.total == 0


def test_linial_reduce_checks_family():
    g = path(3)
    phi = Coloring({1: 1, 2: 2, 3: 3}, 3)
    with pytest.raises(ColoringError):
        linial_reduce(g, phi, build_union_free(3, 1))
    with pytest.raises(ColoringError):
        linial_reduce(g, phi, build_union_free(2, 1))


@pytest.mark.parametrize("seed", range(8))
def test_linial_fixpoint_bound_on_random_graphs(seed):
    g = gnp(80, 0.08, seed)
    col, _ = linial_color(g)
    assert col.is_proper(g)
    assert col.palette <= C_LIN * g.max_degree**2


def test_random_color_proper_and_reproducible():
    g = gnp(120, 0.05, 3)
    a, la = random_color(g, 0.5, SimConfig(seed=9))
    b, lb = random_color(g, 0.5, SimConfig(seed=9))
    assert a == b and la.total == lb.total
    assert a.is_proper(g)
    assert a.palette == math.ceil(g.max_degree * 120**0.5)
    with pytest.raises(ColoringError):
        random_color(g, 0.5, SimConfig(), degree_bound=1)
    with pytest.raises(ColoringError):
        random_color(g, 0.0, SimConfig())


def test_h_partition_check_and_effective():
    g = path(4)
    h = HPartition.of([{1, 4}, {2, 3}], 1)
    h.check(g)
    with pytest.raises(ColoringError):
        HPartition.of([{1, 2}, {3, 4}], 0).check(g)
    with pytest.raises(ColoringError):
        HPartition.of([{1, 2}], 5).check(g)
    assert effective_h_partition(g, HPartition.of([{1, 2, 3, 4}], 1)).degree_bound == 2


def test_orientation_points_forward():
    g = complete(4)
    h = HPartition.of([{1, 2}, {3, 4}], 3)
    parents = orient_parents(g, h)
    assert set(parents[1]) == {2, 3, 4}
    assert parents[4] == ()
    for u, v in g.edges():
        assert (v in parents[u]) != (u in parents[v])


def test_peel_tree_and_stall():
    g = random_tree(60, 1)
    h = peel_h_partition(g, 1, 0.5)
    h.check(g)
    assert h.degree_bound == 2.5
    with pytest.raises(ColoringError):
        peel_h_partition(complete(8), 1, 0.5)


def test_arb_linial_and_h_random_on_grid():
    g = grid(8, 8)
    h = peel_h_partition(g, 2, 0.5)
    col, _ = arb_linial_color(g, h)
    assert validate_coloring(g, col).passed
    col2, led = h_partition_random_color(g, h, 0.5, SimConfig(seed=4))
    assert col2.is_proper(g)
    assert col2.palette == math.ceil(h.degree_bound * 64**0.5)
    assert len(led.entries) == len(h.bands)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 14))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    return build_graph(n, draw(st.lists(st.sampled_from(pairs), unique=True)))


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.sampled_from([None, 1, 2]))
def test_linial_always_proper(g, t):
    col, _ = linial_color(g, t)
    assert col.is_proper(g)


@settings(max_examples=40, deadline=None)
@given(small_graphs(), st.integers(0, 2**32))
def test_peeled_colorings_proper(g, seed):
    a = max(1, g.max_degree)
    h = peel_h_partition(g, a, 0.5)
    assert arb_linial_color(g, h)[0].is_proper(g)
    assert h_partition_random_color(g, h, 0.5, SimConfig(seed=seed))[0].is_proper(g)


def test_petersen_random_coloring_all_seeds():
    g = petersen()
    for s in range(20):
        assert random_color(g, 1.0, SimConfig(seed=s))[0].is_proper(g)
