"""Acceptance criteria 1-12. Each test prints one PASS/FAIL line and then
asserts, so a red line is also a failing test."""

import math
import statistics
import time

import pytest

from netdecomp._numeric import ceil_tol, harmonic, root
from netdecomp.applications import (
    approx_min_coloring,
    approx_mds,
    approx_t_spanner,
    color_high_girth,
    color_triangle_free,
)
from netdecomp.coloring import C_LIN, Coloring, build_union_free, is_union_free, linial_color
from netdecomp.decompose import decompose, extract_h_partition
from netdecomp.generators import cycle, girth6, gnp, grid, random_bipartite, random_tree
from netdecomp.graph import build_graph
from netdecomp.oracles import (
    brute_chromatic,
    brute_mds,
    brute_min_t_spanner,
    validate_coloring,
    validate_decomposition,
    validate_h_partition,
    validate_low_intersecting,
    validate_stretch,
)
from netdecomp.separated import low_intersecting, rs_decompose, sep_decompose
from netdecomp.sim import SimConfig, rng_for

FAMILIES = {
    "gnp(300,0.03)": lambda s: gnp(300, 0.03, s),
    "cycle(200)": lambda s: cycle(200),
    "grid(15,15)": lambda s: grid(15, 15),
    "girth6(3)": lambda s: girth6(3),
}

# every Coloring produced by the application criteria, re-audited in 12
_COLORINGS: list[tuple[object, Coloring]] = []


def _small_gnp(i: int, lo: int, hi: int, scope: str):
    r = rng_for(i, scope, 0, 0)
    n = int(r.integers(lo, hi + 1))
    p = float(r.uniform(0.1, 0.5))
    return gnp(n, p, i)


def _sparse_connected(i: int):
    """Connected graph with at most 25 edges: a random tree plus extras."""
    r = rng_for(i, "spanner-corpus", 0, 0)
    n = int(r.integers(5, 13))
    edges = set(random_tree(n, i).edges())
    budget = min(25, n * (n - 1) // 2)
    extra = int(r.integers(0, budget - len(edges) + 1))
    while extra:
        u, v = sorted(int(x) for x in r.integers(1, n + 1, 2))
        if u != v and (u, v) not in edges:
            edges.add((u, v))
            extra -= 1
    return build_graph(n, edges)


def test_criterion_01_decomposition_validity(report):
    t0 = time.perf_counter()
    bad = []
    runs = 0
    names = list(FAMILIES)
    for i in range(200):
        name = names[i % 4]
        k = 1 + (i // 4) % 3
        g = FAMILIES[name](i)
        nd, _, _ = decompose(g, k, 0.5, cfg=SimConfig(seed=i))
        rep = validate_decomposition(g, nd)
        runs += 1
        stride = max(nd.extra["palettes"])
        ok = (
            rep.passed
            and rep.extra["max_diameter"] <= 3 ** (k - 1) - 1
            and nd.label_count <= k * stride
        )
        if not ok:
            bad.append((name, k, i, rep.rules, rep.extra))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    report(1, ok, f"{runs} runs, {len(bad)} invalid, {elapsed:.1f}s (limit 60s)")
    assert ok, bad[:3]


def test_criterion_02_separation(report):
    names = list(FAMILIES)
    violations = 0
    for i in range(100):
        g = FAMILIES[names[i % 4]](1000 + i)
        nd, _, _ = sep_decompose(g, 2, 3, SimConfig(seed=i))
        rep = validate_decomposition(g, nd)
        violations += len(rep.violations)
    report(2, violations == 0, f"100 runs sigma=3 k=2, {violations} violations")
    assert violations == 0


def test_criterion_03_h_partition_degree(report):
    passed = 0
    for s in range(100):
        g = gnp(500, 0.05, s)
        nd, trace, _ = decompose(g, 2, 0.5, cfg=SimConfig(seed=s, c_degree=4.0))
        h = extract_h_partition(trace)
        rep = validate_h_partition(nd.supergraph(g).graph, h)
        passed += rep.passed
    ok = passed >= 95
    report(3, ok, f"forward-degree audit passed {passed}/100 (need >= 95)")
    assert ok


def test_criterion_04_rs_determinism_and_bound(report):
    problems = []
    for name, make in FAMILIES.items():
        g = make(0)
        for k in (1, 2, 3):
            outs = []
            for seed in (0, 17, 99):
                nd, trace, led = rs_decompose(g, k, "aglp-deterministic", SimConfig(seed=seed))
                outs.append((nd.to_dict(), led.to_dict()))
            if any(o != outs[0] for o in outs[1:]):
                problems.append((name, k, "nondeterministic"))
            bound = ceil_tol(root(g.n, k))
            h = extract_h_partition(trace)
            deg = h.max_forward_degree(nd.supergraph(g).graph)
            if deg > bound:
                problems.append((name, k, f"degree {deg} > {bound}"))
            if not validate_decomposition(g, nd).passed:
                problems.append((name, k, "invalid"))
    report(4, not problems, f"12 family/k cases x 3 seeds, {len(problems)} problems")
    assert not problems, problems


def _mds_suite(pipeline: str):
    viol = []
    for i in range(100):
        g = _small_gnp(i, 6, 18, "mds-corpus")
        opt, _ = brute_mds(g)
        ex = approx_mds(g, 2, "exact", pipeline, SimConfig(seed=i))
        gr = approx_mds(g, 2, "greedy", pipeline, SimConfig(seed=i))
        lc = ex.decomposition.label_count
        if len(ex.value) > lc * opt:
            viol.append(("exact", i, len(ex.value), lc, opt))
        if len(gr.value) > gr.decomposition.label_count * harmonic(g.max_degree + 1) * opt + 1e-9:
            viol.append(("greedy", i, len(gr.value), opt))
    return viol


def test_criterion_05_mds_ratio(report):
    t0 = time.perf_counter()
    viol = _mds_suite("randomized")
    elapsed = time.perf_counter() - t0
    ok = not viol and elapsed < 120
    report(5, ok, f"100 graphs n<=18, {len(viol)} violations, {elapsed:.1f}s (limit 120s)")
    assert ok, viol[:3]


def test_criterion_06_deterministic_mds(report):
    same = True
    for i in range(20):
        g = _small_gnp(i, 6, 18, "mds-corpus")
        outs = {approx_mds(g, 2, "exact", "deterministic", SimConfig(seed=s)).value for s in (0, 5, 123)}
        same &= len(outs) == 1
    viol = _mds_suite("deterministic")
    ok = same and not viol
    report(6, ok, f"seed-free={same}, {len(viol)} ratio violations on 100 graphs")
    assert ok, viol[:3]


def test_criterion_07_coloring_ratio(report):
    viol = []
    for i in range(100):
        g = _small_gnp(i, 6, 16, "color-corpus")
        chi, _ = brute_chromatic(g)
        res = approx_min_coloring(g, 2, SimConfig(seed=i))
        _COLORINGS.append((g, res.value))
        if res.value.num_colors > res.decomposition.label_count * chi:
            viol.append((i, res.value.num_colors, res.decomposition.label_count, chi))
    report(7, not viol, f"100 graphs n<=16 k=2, {len(viol)} violations")
    assert not viol, viol[:3]


def test_criterion_08_spanner(report):
    viol = []
    for i in range(50):
        g = _sparse_connected(i)
        assert g.m <= 25
        for t in (2, 3):
            opt, _ = brute_min_t_spanner(g, t)
            res = approx_t_spanner(g, t, 1, SimConfig(seed=i))
            lc = res.decomposition.label_count
            if res.extra["intra"] > lc * opt:
                viol.append((i, t, res.extra["intra"], lc, opt))
            if not validate_stretch(g, res.value, t).passed:
                viol.append((i, t, "stretch"))
    report(8, not viol, f"50 graphs x t in {{2,3}}, k=1, {len(viol)} violations")
    assert not viol, viol[:3]


def test_criterion_09_triangle_free_and_girth(report):
    eps = 0.5
    round_cap = math.ceil(6 / eps)
    trials = 0
    fast = 0
    bad = []
    graphs = [("girth6(2)", girth6(2)), ("girth6(3)", girth6(3))]
    graphs += [(f"bip{i}", random_bipartite(8 + i % 9, 8 + (i * 7) % 11, 0.3, i)) for i in range(50)]
    for name, g in graphs:
        seeds = range(10) if name.startswith("girth6") else range(2)
        for s in seeds:
            res = color_triangle_free(g, eps, SimConfig(seed=s))
            _COLORINGS.append((g, res.value))
            trials += 1
            fast += res.extra["rounds"] <= round_cap
            bound = 2 * res.extra["A"] * math.ceil(g.n**eps)
            if not res.value.is_proper(g) or res.value.palette > bound:
                bad.append((name, s, "tf", res.value.palette, bound))
            if name.startswith("girth6"):
                hg = color_high_girth(g, 4, eps, SimConfig(seed=s))
                _COLORINGS.append((g, hg.value))
                trials += 1
                fast += hg.extra["rounds"] <= round_cap
                hb = math.ceil((2 + eps) * hg.extra["a"] * g.n**eps)
                if not hg.value.is_proper(g) or hg.value.palette > hb:
                    bad.append((name, s, "girth", hg.value.palette, hb))
    rate = fast / trials
    ok = not bad and rate >= 0.9
    report(9, ok, f"{trials} trials, {len(bad)} palette/properness failures, rounds<={round_cap} in {rate:.0%}")
    assert ok, bad[:3]


def test_criterion_10_low_intersecting(report):
    names = list(FAMILIES)
    viol = 0
    for i in range(50):
        gamma = 1 + i % 2
        g = FAMILIES[names[i % 4]](2000 + i)
        lip, _ = low_intersecting(g, 2, gamma, SimConfig(seed=i))
        rep = validate_low_intersecting(g, lip)
        drep = validate_decomposition(g, lip.decomposition)
        viol += len(rep.violations) + len(drep.violations)
    report(10, viol == 0, f"50 runs gamma in {{1,2}} k=2, {viol} violations")
    assert viol == 0


def test_criterion_11_constant_time_flavor(report):
    means = {}
    for n in (256, 4096):
        totals = [decompose(gnp(n, 10 / n, s), 2, 0.5, cfg=SimConfig(seed=s))[2].total for s in range(20)]
        means[n] = statistics.mean(totals)
    lo, hi = sorted(means.values())
    ratio = hi / lo
    ok = ratio <= 2
    report(11, ok, f"mean rounds n=256: {means[256]:.2f}, n=4096: {means[4096]:.2f}, factor {ratio:.2f} (limit 2)")
    assert ok


def test_criterion_12_kernel_micro_oracles(report):
    uf_bad = [
        (p, d) for d in range(0, 5) for p in range(d + 1, 33)
        if not is_union_free(build_union_free(p, d).sets, d)
    ]
    lin_bad = []
    improper = 0
    for i in range(500):
        r = rng_for(i, "linial-corpus", 0, 0)
        n = int(r.integers(2, 101))
        g = gnp(n, float(r.uniform(0.02, 0.3)), i)
        if g.max_degree == 0:
            g = build_graph(n, [(1, 2)])
        col, _ = linial_color(g)
        improper += not validate_coloring(g, col).passed
        if col.palette > C_LIN * g.max_degree**2:
            lin_bad.append((i, n, g.max_degree, col.palette))
    improper += sum(not validate_coloring(g, c).passed for g, c in _COLORINGS)
    ok = not uf_bad and not lin_bad and not improper
    report(
        12, ok,
        f"union-free failures {len(uf_bad)}, linial palette > {C_LIN}*Delta^2: {len(lin_bad)}, "
        f"improper colorings {improper} of {500 + len(_COLORINGS)}",
    )
    assert ok, (uf_bad[:3], lin_bad[:3])


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
