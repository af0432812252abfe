"""Decomposition-based approximations next to exact answers."""

# %% setup
import numpy as np

from netdecomp import SimConfig, approx_mds, approx_min_coloring, approx_t_spanner
from netdecomp.generators import gnp, random_tree
from netdecomp.graph import build_graph
from netdecomp.oracles import brute_chromatic, brute_mds, brute_min_t_spanner

# %% dominating sets on small random graphs
ratios = []
for s in range(20):
    g = gnp(16, 0.25, s)
    opt, _ = brute_mds(g)
    res = approx_mds(g, 2, "exact", "det", SimConfig(seed=s))
    ratios.append(len(res.value) / opt)
    assert len(res.value) <= res.bound * opt
ratios = np.array(ratios)
print("MDS ratio: mean %.2f, worst %.2f" % (ratios.mean(), ratios.max()))

# %% coloring: optimal per cluster, clusters separated by label
g = gnp(14, 0.35, 7)
res = approx_min_coloring(g, 2, SimConfig(seed=7))
print("chromatic number", brute_chromatic(g)[0], "| approx colors", res.value.num_colors, "| bound factor", res.bound)

# %% a 3-spanner of a sparse connected graph
t = random_tree(10, 3)
g = build_graph(10, set(t.edges()) | {(1, 5), (2, 9), (3, 7), (4, 8), (6, 10)})
res = approx_t_spanner(g, 3, 1)
print("edges", g.m, "| spanner", res.extra["total"], "| optimum", brute_min_t_spanner(g, 3)[0])
