"""End-to-end applications built on decompositions: approximate minimum
coloring, coloring of triangle-free and high-girth graphs, approximate
minimum dominating set and approximate minimum t-spanner.

Every result carries ``bound``, the approximation factor certified by the
decomposition it was built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._numeric import ceil_tol, harmonic, root
from .coloring import Coloring, ColoringError, HPartition, h_partition_random_color, peel_h_partition
from .decompose import (
    DecompositionError,
    NetworkDecomposition,
    check_k,
    component_decomposition,
    decompose,
    extract_h_partition,
)
from .graph import Graph, ball_of_set, connected_components, girth, has_triangle, induced
from .oracles import (
    CHROMATIC_CAP,
    brute_chromatic,
    validate_charging,
    validate_coloring,
    validate_domination,
    validate_stretch,
)
from .separated import rs_sep_decompose, sep_decompose
from .sim import RoundLedger, SimConfig

__all__ = [
    "MDS_CLUSTER_CAP",
    "SPANNER_CLUSTER_CAP",
    "OversizeError",
    "PreconditionError",
    "ApproxResult",
    "approx_min_coloring",
    "color_triangle_free",
    "color_high_girth",
    "exact_cluster_mds",
    "greedy_cluster_mds",
    "approx_mds",
    "approx_t_spanner",
]

MDS_CLUSTER_CAP = 25
SPANNER_CLUSTER_CAP = 25


class OversizeError(ValueError):
    """A per-cluster exact solve exceeds its size cap."""


class PreconditionError(ValueError):
    pass


@dataclass
class ApproxResult:
    value: object
    bound: float
    ledger: RoundLedger
    decomposition: NetworkDecomposition | None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        v = self.value
        if isinstance(v, Coloring):
            val = v.to_dict()
        elif isinstance(v, (set, frozenset)):
            val = sorted(v)
        else:
            val = v
        return {"value": val, "bound": self.bound, "ledger": self.ledger.to_dict(), **self.extra}


def _decomposition_for(
    g: Graph, k: int, sigma: int, cfg: SimConfig, pipeline: str = "randomized"
) -> tuple[NetworkDecomposition, RoundLedger]:
    """k = 1 means one cluster per connected component (a single label)."""
    check_k(g.n, k)
    if k == 1:
        return component_decomposition(g, sigma), RoundLedger()
    if pipeline == "randomized":
        if sigma == 2:
            nd, _, led = decompose(g, k, cfg=cfg)
        else:
            nd, _, led = sep_decompose(g, k, sigma, cfg)
    elif pipeline == "deterministic":
        nd, _, led = rs_sep_decompose(g, k, sigma, "aglp-deterministic", cfg)
    else:
        raise DecompositionError("pipeline must be 'randomized' or 'deterministic'")
    return nd, led


# -- coloring -----------------------------------------------------------------------


def approx_min_coloring(g: Graph, k: int, cfg: SimConfig | None = None) -> ApproxResult:
    """Optimal coloring inside each cluster, paired with the cluster label."""
    cfg = cfg or SimConfig()
    nd, ledger = _decomposition_for(g, k, 2, cfg)
    local: list[tuple[dict[int, int], list[int]]] = []
    width = 1
    for c in nd.clusters:
        if len(c) > CHROMATIC_CAP:
            raise OversizeError(f"cluster of size {len(c)} exceeds the exact coloring cap {CHROMATIC_CAP}")
        sub, back = induced(g, c)
        chi, wit = brute_chromatic(sub)
        width = max(width, chi)
        local.append((wit.colors, back))
    colors = {}
    for (wc, back), lab in zip(local, nd.labels):
        for i, c in wc.items():
            colors[back[i]] = (lab - 1) * width + c
    col = Coloring(colors, max(nd.labels, default=1) * width)
    rep = validate_coloring(g, col)
    if not rep.passed:
        raise AssertionError(f"improper coloring: {rep.violations[:3]}")
    ledger.charge("local-solve", int(nd.d) + 1)
    return ApproxResult(col, nd.label_count, ledger, nd, {"colors_used": col.num_colors, "local_width": width})


def color_triangle_free(g: Graph, epsilon: float = 0.5, cfg: SimConfig | None = None) -> ApproxResult:
    """Two-level decomposition; every top-level cluster is a star. Clusters
    get trial colors x from an H-partition coloring of the cluster graph;
    star centers and singletons use 2x-1, star leaves 2x."""
    cfg = cfg or SimConfig()
    tri = has_triangle(g)
    if tri is not None:
        raise PreconditionError(f"graph has a triangle {tri}")
    if not 0 < epsilon <= 1:
        raise PreconditionError("epsilon must be in (0, 1]")
    k = 2 if g.n >= 4 else 1
    if k == 2:
        nd, trace, ledger = decompose(g, 2, epsilon, cfg=cfg)
        bands = extract_h_partition(trace).bands
    else:
        nd, trace, ledger = decompose(g, 1, epsilon, cfg=cfg)
        bands = (frozenset(range(1, len(nd) + 1)),)
    sg = nd.supergraph(g).graph
    probe = HPartition(bands, math.inf)
    a_real = max(1, probe.max_forward_degree(sg))
    h = HPartition(bands, a_real)
    col, led = h_partition_random_color(sg, h, epsilon, cfg, ids=[0, *nd.leaders], n_palette=g.n, scope="tf-color")
    ledger.absorb(led, int(nd.d) + 1, "tf/")
    colors = {}
    for i, (c, lead) in enumerate(zip(nd.clusters, nd.leaders), start=1):
        x = col[i]
        for v in c:
            colors[v] = 2 * x - 1 if v == lead else 2 * x
    out = Coloring(colors, 2 * col.palette)
    rep = validate_coloring(g, out)
    if not rep.passed:
        raise AssertionError(f"improper coloring: {rep.violations[:3]}")
    rounds = sum(e.base for e in led.entries)
    return ApproxResult(
        out, 2 * col.palette, ledger, nd,
        {"A": a_real, "palette_bound": 2 * a_real * ceil_tol(max(g.n, 1) ** epsilon), "rounds": rounds},
    )


def color_high_girth(
    g: Graph, girth_param: int, epsilon: float = 0.5, cfg: SimConfig | None = None
) -> ApproxResult:
    """Graphs with girth > 2k have arboricity <= n**(1/k): peel an
    H-partition and color it band by band."""
    cfg = cfg or SimConfig()
    if girth_param < 4 or girth_param % 2:
        raise PreconditionError("girth_param must be an even number >= 4")
    if not 0 < epsilon <= 1:
        raise PreconditionError("epsilon must be in (0, 1]")
    gg = girth(g)
    if gg <= girth_param:
        raise PreconditionError(f"girth {gg} is not greater than {girth_param}")
    k = girth_param // 2
    a = max(1, ceil_tol(root(max(g.n, 1), k)))
    try:
        h = peel_h_partition(g, a, epsilon)
    except ColoringError as exc:
        raise AssertionError(f"peeling stalled despite the girth bound: {exc}") from None
    col, led = h_partition_random_color(g, h, epsilon, cfg, scope="girth-color")
    rep = validate_coloring(g, col)
    if not rep.passed:
        raise AssertionError(f"improper coloring: {rep.violations[:3]}")
    rounds = led.total
    return ApproxResult(
        col, col.palette, led, None,
        {"a": a, "bands": len(h.bands), "palette_bound": ceil_tol((2 + epsilon) * a * max(g.n, 1) ** epsilon),
         "rounds": rounds},
    )


# -- dominating set -------------------------------------------------------------------


def _closed(g: Graph, c) -> list[int]:
    out = set(c)
    for v in c:
        out.update(g.neighbors(v))
    return sorted(out)


def exact_cluster_mds(g: Graph, c) -> frozenset[int]:
    """Smallest D within Gamma+(C) that dominates C (branch and bound)."""
    c = frozenset(c)
    if not c:
        raise PreconditionError("cluster must be nonempty")
    cand = _closed(g, c)
    if len(cand) > MDS_CLUSTER_CAP:
        raise OversizeError(
            f"|Gamma+(C)| = {len(cand)} exceeds the exact cap {MDS_CLUSTER_CAP}; use the greedy solver"
        )
    targets = sorted(c)
    bit = {v: 1 << i for i, v in enumerate(targets)}
    full = (1 << len(targets)) - 1
    cover = {}
    for v in cand:
        m = bit.get(v, 0)
        for u in g.neighbors(v):
            m |= bit.get(u, 0)
        cover[v] = m
    coverers = {t: [v for v in cand if cover[v] & bit[t]] for t in targets}
    best = [frozenset(greedy_cluster_mds(g, c))]
    max_cov = max(bin(m).count("1") for m in cover.values())

    def go(chosen: list[int], got: int):
        if got == full:
            if len(chosen) < len(best[0]):
                best[0] = frozenset(chosen)
            return
        left = bin(full & ~got).count("1")
        if len(chosen) + -(-left // max_cov) >= len(best[0]):
            return
        # branch on the uncovered target with the fewest options
        t = min((t for t in targets if not got & bit[t]), key=lambda t: (len(coverers[t]), t))
        for v in sorted(coverers[t], key=lambda v: (-bin(cover[v] & ~got).count("1"), v)):
            chosen.append(v)
            go(chosen, got | cover[v])
            chosen.pop()

    go([], 0)
    return best[0]


def greedy_cluster_mds(g: Graph, c) -> frozenset[int]:
    """Repeatedly take the vertex of Gamma+(C) covering the most still
    undominated members of C; ties prefer vertices already inside
    Gamma+(D), then the smaller ID."""
    c = frozenset(c)
    if not c:
        raise PreconditionError("cluster must be nonempty")
    cand = _closed(g, c)
    left = set(c)
    chosen: list[int] = []
    near: set[int] = set()
    while left:
        def score(v: int):
            gain = (v in left) + sum(1 for u in g.neighbors(v) if u in left)
            return (gain, v in near, -v)

        v = max(cand, key=score)
        chosen.append(v)
        near.add(v)
        near.update(g.neighbors(v))
        left.discard(v)
        left.difference_update(g.neighbors(v))
    return frozenset(chosen)


def approx_mds(
    g: Graph,
    k: int,
    solver: str = "exact",
    pipeline: str = "randomized",
    cfg: SimConfig | None = None,
) -> ApproxResult:
    """Union of per-cluster optimal (or greedy) dominators of a
    3-separated decomposition."""
    cfg = cfg or SimConfig()
    if solver not in ("exact", "greedy"):
        raise PreconditionError("solver must be 'exact' or 'greedy'")
    if pipeline in ("rand", "det"):
        pipeline = {"rand": "randomized", "det": "deterministic"}[pipeline]
    nd, ledger = _decomposition_for(g, k, 3, cfg, pipeline)
    audit = validate_charging(g, nd)
    if not audit.passed:
        raise AssertionError(f"equal-label neighborhoods overlap: {audit.violations[:3]}")
    fn = exact_cluster_mds if solver == "exact" else greedy_cluster_mds
    dom: set[int] = set()
    for c in nd.clusters:
        dom |= fn(g, c)
    rep = validate_domination(g, dom)
    if not rep.passed:
        raise AssertionError(f"not dominating: {rep.violations[:3]}")
    ledger.charge("local-solve", int(nd.d) + 2)
    bound = float(nd.label_count)
    if solver == "greedy":
        bound *= harmonic(g.max_degree + 1)
    return ApproxResult(frozenset(dom), bound, ledger, nd, {"size": len(dom), "labels": nd.label_count})


# -- t-spanner ------------------------------------------------------------------------


def _min_client_server_spanner(
    g: Graph, clients: list[tuple[int, int]], servers: list[tuple[int, int]], t: int
) -> frozenset[tuple[int, int]]:
    """Fewest server edges such that every client edge has a path of
    length <= t through chosen servers (branch and bound over, for each
    unsatisfied client, the ways of satisfying it)."""
    sidx = {e: i for i, e in enumerate(servers)}
    sadj: dict[int, list[tuple[int, int]]] = {}
    for (u, v), i in sidx.items():
        sadj.setdefault(u, []).append((v, i))
        sadj.setdefault(v, []).append((u, i))
    options: list[list[int]] = []
    for u, v in clients:
        opts: set[int] = set()
        stack = [(u, frozenset((u,)), 0)]
        while stack:
            x, seen, mask = stack.pop()
            if bin(mask).count("1") >= t:
                continue
            for y, i in sadj.get(x, ()):
                if y in seen:
                    continue
                m = mask | (1 << i)
                if y == v:
                    opts.add(m)
                else:
                    stack.append((y, seen | {y}, m))
        # drop options that strictly contain another option
        ordered = sorted(opts, key=lambda m: (bin(m).count("1"), m))
        minimal: list[int] = []
        for m in ordered:
            if not any(o & m == o for o in minimal):
                minimal.append(m)
        options.append(minimal)
    best = [sum(1 << sidx[e] for e in clients)]
    seen_states: set[int] = set()

    def go(h: int):
        if h in seen_states:
            return
        seen_states.add(h)
        size = bin(h).count("1")
        if size >= bin(best[0]).count("1"):
            return
        open_ = [i for i, opts in enumerate(options) if not any(o & h == o for o in opts)]
        if not open_:
            best[0] = h
            return
        if size + 1 >= bin(best[0]).count("1"):
            return
        i = min(open_, key=lambda i: (len(options[i]), i))
        for o in sorted(options[i], key=lambda o: (bin(o & ~h).count("1"), o)):
            go(h | o)

    go(0)
    return frozenset(servers[i] for i in range(len(servers)) if best[0] >> i & 1)


def approx_t_spanner(g: Graph, t: int, k: int, cfg: SimConfig | None = None) -> ApproxResult:
    """Per-cluster minimum spanners of intra-cluster edges (allowed to use
    edges within distance t-1 of the cluster) on a (2t-1)-separated
    decomposition; edges between clusters are kept as they are."""
    cfg = cfg or SimConfig()
    if t < 2:
        raise PreconditionError("t must be >= 2")
    if g.n and len(connected_components(g)) != 1:
        raise PreconditionError("graph must be connected")
    nd, ledger = _decomposition_for(g, k, 2 * t - 1, cfg)
    owner = nd.cluster_of()
    intra: set[tuple[int, int]] = set()
    for c in nd.clusters:
        clients = [(u, v) for u, v in g.edges() if u in c and v in c]
        if not clients:
            continue
        hat = ball_of_set(g, c, t - 1)
        servers = [(u, v) for u, v in g.edges() if u in hat and v in hat]
        if len(servers) > SPANNER_CLUSTER_CAP:
            raise OversizeError(
                f"|E(C^)| = {len(servers)} exceeds the exact spanner cap {SPANNER_CLUSTER_CAP}"
            )
        intra |= _min_client_server_spanner(g, clients, servers, t)
    crossing = {(u, v) for u, v in g.edges() if owner[u] != owner[v]}
    edges = frozenset(intra | crossing)
    rep = validate_stretch(g, edges, t)
    if not rep.passed:
        raise AssertionError(f"stretch violated: {rep.violations[:3]}")
    ledger.charge("local-solve", int(nd.d) + 2 * t)
    return ApproxResult(
        edges, float(nd.label_count), ledger, nd,
        {"intra": len(intra), "crossing": len(crossing), "total": len(edges), "max_stretch": rep.extra["max_stretch"]},
    )
