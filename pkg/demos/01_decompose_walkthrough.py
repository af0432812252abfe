"""Walk through one randomized decomposition level by level."""

# %% build a sparse random graph and decompose it with k = 2
import numpy as np

from netdecomp import SimConfig, decompose, extract_h_partition
from netdecomp.generators import gnp
from netdecomp.oracles import validate_decomposition, validate_h_partition

g = gnp(600, 8 / 600, seed=1)
nd, trace, ledger = decompose(g, k=2, epsilon=0.5, cfg=SimConfig(seed=1))
print(f"n={g.n} m={g.m} max degree={g.max_degree}")

# %% what each recursion level did
for rec in trace.levels:
    print(
        f"level {rec.level}: {rec.s} supernodes, A-side {len(rec.a_side)}, "
        f"stars {rec.b_count}, A-degree {rec.realized_degree} (bound {rec.degree_bound}), "
        f"palette {rec.palette}"
    )

# %% cluster sizes and the certificate
sizes = np.array([len(c) for c in nd.clusters])
print("clusters:", len(sizes), "mean size %.2f, largest %d" % (sizes.mean(), sizes.max()))
print("certificate: d=%d  l=%d  labels used=%d" % (nd.d, nd.l, nd.label_count))

# %% independent checks
rep = validate_decomposition(g, nd)
print("valid:", rep.passed, "realized max diameter:", rep.extra["max_diameter"])
h = extract_h_partition(trace)
hrep = validate_h_partition(nd.supergraph(g).graph, h)
print("H-partition bands:", len(h.bands), "max forward degree:", hrep.extra["max_forward_degree"])

# %% where the simulated rounds went
for e in ledger.entries:
    print(f"  {e.phase:40s} {e.base:3d} x {e.multiplier:2d} = {e.charged}")
print("total rounds:", ledger.total)
