import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netdecomp._numeric import harmonic
from netdecomp.applications import (
    OversizeError,
    PreconditionError,
    approx_min_coloring,
    approx_mds,
    approx_t_spanner,
    color_high_girth,
    color_triangle_free,
    exact_cluster_mds,
    greedy_cluster_mds,
)
from netdecomp.generators import complete, cycle, girth6, gnp, grid, path, petersen, random_bipartite, star
from netdecomp.graph import build_graph
from netdecomp.oracles import brute_chromatic, brute_mds, validate_domination, validate_stretch
from netdecomp.sim import SimConfig


def test_mds_on_star_and_path():
    assert approx_mds(star(5), 1).value == {1}
    g = path(4)
    assert greedy_cluster_mds(g, frozenset(g.vertices)) == {2, 3}
    assert len(exact_cluster_mds(g, frozenset(g.vertices))) == 2


def test_mds_cluster_solver_covers_only_the_cluster():
    g = path(6)
    c = frozenset({3, 4})
    sol = exact_cluster_mds(g, c)
    assert validate_domination(g, sol, c).passed and len(sol) == 1


def test_mds_bad_args():
    with pytest.raises(PreconditionError):
        approx_mds(cycle(8), 2, solver="magic")


@pytest.mark.parametrize("pipeline", ["rand", "det"])
def test_mds_ratio_small(pipeline):
    for s in range(10):
        g = gnp(14, 0.25, s)
        opt, _ = brute_mds(g)
        res = approx_mds(g, 2, "exact", pipeline, SimConfig(seed=s))
        assert validate_domination(g, res.value).passed
        assert len(res.value) <= res.bound * opt
        gr = approx_mds(g, 2, "greedy", pipeline, SimConfig(seed=s))
        assert gr.bound == pytest.approx(gr.decomposition.label_count * harmonic(g.max_degree + 1))
        assert len(gr.value) <= gr.bound * opt


def test_min_coloring():
    g = petersen()
    res = approx_min_coloring(g, 1)
    assert res.value.num_colors == 3 == brute_chromatic(g)[0]
    res2 = approx_min_coloring(gnp(16, 0.3, 1), 2, SimConfig(seed=1))
    assert res2.value.num_colors <= res2.bound * brute_chromatic(gnp(16, 0.3, 1))[0]
    with pytest.raises(OversizeError):
        approx_min_coloring(cycle(40), 1)


def test_triangle_free_examples():
    with pytest.raises(PreconditionError):
        color_triangle_free(complete(3))
    for q in (2, 3):
        g = girth6(q)
        res = color_triangle_free(g, 0.5, SimConfig(seed=0))
        assert res.value.is_proper(g)
        assert res.value.palette <= 2 * res.extra["A"] * math.ceil(g.n**0.5)


def test_triangle_free_tiny_graph():
    g = path(3)
    res = color_triangle_free(g, 0.5)
    assert res.value.is_proper(g)


def test_high_girth():
    g = girth6(3)
    res = color_high_girth(g, 4, 0.5, SimConfig(seed=2))
    assert res.value.is_proper(g)
    assert res.value.palette <= math.ceil(2.5 * res.extra["a"] * g.n**0.5)
    with pytest.raises(PreconditionError):
        color_high_girth(cycle(4), 4)
    with pytest.raises(PreconditionError):
        color_high_girth(g, 5)


def test_spanner_examples():
    res = approx_t_spanner(cycle(5), 4, 1)
    assert res.extra["total"] == 4
    res = approx_t_spanner(complete(4), 2, 1)
    assert res.extra["total"] == 3
    assert validate_stretch(complete(4), res.value, 2).passed
    with pytest.raises(PreconditionError):
        approx_t_spanner(build_graph(4, [(1, 2)]), 2, 1)


def test_spanner_k2_keeps_stretch():
    g = grid(6, 6)
    res = approx_t_spanner(g, 3, 2, SimConfig(seed=3))
    assert validate_stretch(g, res.value, 3).passed
    assert res.extra["total"] == res.extra["intra"] + res.extra["crossing"]


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 9), st.integers(2, 9), st.floats(0.1, 0.6), st.integers(0, 2**32))
def test_triangle_free_bipartite_property(a, b, p, seed):
    g = random_bipartite(a, b, p, seed)
    res = color_triangle_free(g, 0.5, SimConfig(seed=seed))
    assert res.value.is_proper(g)
