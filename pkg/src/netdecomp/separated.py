"""Ruling sets and the decompositions built from them, separated
decompositions, low-intersecting partitions and the cluster-skeleton
spanner."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from ._numeric import ceil_tol, root
from .coloring import UNTIL_FIXPOINT
from .decompose import (
    DecomposeTrace,
    DecompositionError,
    NetworkDecomposition,
    _recurse,
    _stars,
    check_k,
    decompose,
    explore_assign,
    extract_h_partition,
    relabel,
    with_labels,
)
from .graph import Graph, SuperGraph, bfs_distances, contract, power_graph
from .oracles import ValidationReport, validate_low_intersecting, validate_ruling_set, validate_stretch
from .sim import RoundLedger, SimConfig, uniform_for

__all__ = [
    "RULING_METHODS",
    "RulingSet",
    "LowIntersectingPartition",
    "ruling_set",
    "rs_partition",
    "rs_decompose",
    "rs_sep_decompose",
    "sep_partition",
    "sep_decompose",
    "weak_sep_decompose",
    "low_intersecting",
    "skeleton_spanner",
]

RULING_METHODS = ("luby-power", "aglp-deterministic")


@dataclass(frozen=True)
class RulingSet:
    members: frozenset[int]
    sep: int
    dom: int
    universe: frozenset[int]
    method: str = ""


@dataclass(frozen=True)
class LowIntersectingPartition:
    clusters: tuple[frozenset[int], ...]
    alpha: int
    beta: int
    gamma: int
    decomposition: NetworkDecomposition = field(repr=False)
    report: ValidationReport | None = field(default=None, repr=False, compare=False)


# -- ruling sets ----------------------------------------------------------------


def _realized_dom(g: Graph, members: Iterable[int], universe: frozenset[int]) -> int:
    d = bfs_distances(g, members)
    return max((d[u] for u in universe), default=0)


def _luby(g: Graph, universe: frozenset[int], sep: int, cfg: SimConfig, ids: Sequence[int], scope: str):
    """Luby's MIS on the conflict graph {u, w in U : dist(u, w) < sep}."""
    conflict = {
        u: [w for w in bfs_distances(g, u, radius=sep - 1) if w != u and w in universe]
        for u in sorted(universe)
    }
    active = set(universe)
    chosen: set[int] = set()
    rounds = 0
    while active:
        rounds += 1
        val = {u: (uniform_for(cfg.seed, scope, ids[u], rounds), ids[u]) for u in active}
        win = [u for u in sorted(active) if all(w not in active or val[u] < val[w] for w in conflict[u])]
        chosen.update(win)
        for u in win:
            active.discard(u)
            active.difference_update(conflict[u])
    return chosen, rounds


def _aglp(g: Graph, universe: frozenset[int], sep: int, ids: Sequence[int]):
    """Deterministic bit-merging: groups share an ID prefix; at phase b the
    two halves of each group (bit b = 0 / 1) merge, keeping all of the
    0-side rulers and the 1-side rulers at distance >= sep from them."""
    bits = max((ids[u] for u in universe), default=1).bit_length()
    rulers: dict[int, set[int]] = {}
    for u in universe:
        rulers.setdefault(ids[u], set()).add(u)
    for b in range(bits):
        merged: dict[int, set[int]] = {}
        for prefix in sorted(rulers):
            merged.setdefault(prefix >> 1, set())
        for top in sorted(merged):
            r0 = rulers.get(top << 1, set())
            r1 = rulers.get((top << 1) | 1, set())
            keep = set(r0)
            if r1:
                near = bfs_distances(g, r0, radius=sep - 1) if r0 else {}
                keep |= {w for w in r1 if w not in near}
            merged[top] = keep
        rulers = merged
    members: set[int] = set()
    for s in rulers.values():
        members |= s
    return members, bits


def ruling_set(
    g: Graph,
    universe: Iterable[int],
    sep: int,
    method: str = "luby-power",
    cfg: SimConfig | None = None,
    *,
    ids: Sequence[int] | None = None,
    scope: str = "ruling-set",
) -> tuple[RulingSet, RoundLedger]:
    """Members pairwise >= ``sep`` apart; every universe vertex within the
    realized ``dom`` of a member. luby-power gives dom <= sep-1;
    aglp-deterministic gives dom <= (sep-1) * bit_length(max id)."""
    cfg = cfg or SimConfig()
    uni = frozenset(universe)
    if not uni:
        raise DecompositionError("universe must be nonempty")
    if sep < 2:
        raise DecompositionError("sep must be >= 2")
    ids = range(g.n + 1) if ids is None else ids
    ledger = RoundLedger()
    if method == "luby-power":
        members, rounds = _luby(g, uni, sep, cfg, ids, scope)
        # one round on the power graph costs sep-1 base rounds
        ledger.charge(f"{scope}/luby-power", rounds * (sep - 1))
    elif method == "aglp-deterministic":
        members, phases = _aglp(g, uni, sep, ids)
        ledger.charge(f"{scope}/aglp", phases * (sep - 1))
    else:
        raise DecompositionError(f"method must be one of {RULING_METHODS}")
    rs = RulingSet(frozenset(members), sep, _realized_dom(g, members, uni), uni, method)
    rep = validate_ruling_set(g, rs)
    if not rep.passed:
        raise AssertionError(f"ruling set failed its own audit: {rep.violations[:3]}")
    return rs, ledger


# -- RS-partition / RS-decompose -----------------------------------------------------


def _rs_split(g: Graph, q: float, sep: int, method: str, cfg: SimConfig, ids: Sequence[int], scope: str):
    if sep < 3:
        raise DecompositionError("sep must be >= 3 so that rulers' neighborhoods are disjoint")
    if q < 1:
        raise DecompositionError("q must be >= 1")
    high = [v for v in g.vertices if g.degree(v) >= q - 1e-12]
    if not high:
        return list(g.vertices), [], RoundLedger(), None
    rs, ledger = ruling_set(g, high, sep, method, cfg, ids=ids, scope=scope)
    owner, _ = explore_assign(g, sorted(rs.members), rs.dom, ids)
    ledger.charge(f"{scope}/explore", rs.dom + 1)
    groups: dict[int, list[int]] = {w: [] for w in rs.members}
    for v in sorted(owner):
        groups[owner[v]].append(v)
    a_side = [v for v in g.vertices if v not in owner]
    stars = [(w, groups[w]) for w in sorted(rs.members, key=lambda w: ids[w])]
    return a_side, stars, ledger, rs


def rs_partition(
    g: Graph,
    q: float,
    sep: int = 3,
    method: str = "luby-power",
    cfg: SimConfig | None = None,
    *,
    ids: Sequence[int] | None = None,
    level: int = 1,
) -> tuple[frozenset[int], SuperGraph, RoundLedger, RulingSet | None]:
    """Cluster every vertex of degree >= q around a ruler; the rest (all of
    degree < q) is returned as A."""
    cfg = cfg or SimConfig()
    ids = range(g.n + 1) if ids is None else ids
    a_side, stars, ledger, rs = _rs_split(g, q, sep, method, cfg, ids, f"rs-partition/L{level}")
    sg = contract(g, [m for _, m in stars], [c for c, _ in stars])
    return frozenset(a_side), sg, ledger, rs


def rs_decompose(
    g: Graph,
    k: int,
    method: str = "aglp-deterministic",
    cfg: SimConfig | None = None,
    *,
    epsilon: float = 0.5,
    t: int | None = UNTIL_FIXPOINT,
    variant: str = "always-linial",
    sep: int = 3,
) -> tuple[NetworkDecomposition, DecomposeTrace, RoundLedger]:
    """Recursion with ruling-set clustering. Every A-side supernode has
    degree < n**(1/k), so the band H-partition has degree <= ceil(n**(1/k))."""
    cfg = cfg or SimConfig()
    n = g.n
    check_k(n, k)
    q = root(n, k)
    doms: dict[int, int] = {}

    def split(sg: Graph, ids, level):
        a, stars, led, rs = _rs_split(sg, q, sep, method, cfg, ids, f"rs-partition/L{level}")
        doms[level] = rs.dom if rs is not None else 0
        return a, stars, led, max(0, min(ceil_tol(q) - 1, sg.n - 1))

    nd, trace, ledger = _recurse(
        g, k, epsilon, t, variant, cfg, split,
        lambda s, level: s <= q,
        lambda dm, level: (2 * doms.get(level, 0) + 1) * (dm + 1) - 1,
        ceil_tol(q),
        f"rs-decompose/{method}",
    )
    nd.extra["realizedDom"] = max(doms.values(), default=0)
    nd.extra["doms"] = [doms[lv] for lv in sorted(doms)]
    return nd, trace, ledger


def rs_sep_decompose(
    g: Graph,
    k: int,
    sigma: int = 3,
    method: str = "aglp-deterministic",
    cfg: SimConfig | None = None,
    *,
    scheme: str = "arb-linial",
    t: int | None = UNTIL_FIXPOINT,
    epsilon: float = 0.5,
) -> tuple[NetworkDecomposition, DecomposeTrace, RoundLedger]:
    """rs_decompose followed by relabeling over the (sigma-1)-th power of
    the cluster supergraph. With aglp rulers and arb-linial this is fully
    deterministic."""
    cfg = cfg or SimConfig()
    if sigma < 2:
        raise DecompositionError("sigma must be >= 2")
    nd, trace, ledger = rs_decompose(g, k, method, cfg)
    h = extract_h_partition(trace)
    col, led = relabel(g, nd, h, scheme, cfg, t=t, epsilon=epsilon, power=sigma - 1)
    ledger.absorb(led)
    return with_labels(nd, col, sigma=sigma), trace, ledger


# -- separated decompositions -------------------------------------------------------


def sep_partition(
    g: Graph,
    q: float,
    sigma: int,
    cfg: SimConfig | None = None,
    *,
    ids: Sequence[int] | None = None,
    level: int = 1,
) -> tuple[frozenset[int], SuperGraph, RoundLedger]:
    """Sampled vertices explore to distance sigma-1; every reached vertex
    joins its closest originator (ties to the smaller ID)."""
    if sigma < 2:
        raise DecompositionError("sigma must be >= 2")
    cfg = cfg or SimConfig()
    ids = range(g.n + 1) if ids is None else ids
    a_side, stars, ledger = _stars(g, q, sigma - 1, cfg, ids, f"partition/L{level}")
    sg = contract(g, [m for _, m in stars], [c for c, _ in stars])
    return frozenset(a_side), sg, ledger


def sep_decompose(
    g: Graph,
    k: int,
    sigma: int = 3,
    cfg: SimConfig | None = None,
    *,
    epsilon: float = 0.5,
    t: int | None = UNTIL_FIXPOINT,
    variant: str = "threshold",
    scheme: str = "arb-linial",
) -> tuple[NetworkDecomposition, DecomposeTrace, RoundLedger]:
    """Strong decomposition whose equal-label clusters are >= sigma apart.
    Cluster diameter <= (2*sigma-1)**(L-1) - 1 for realized depth L."""
    cfg = cfg or SimConfig()
    if sigma < 2:
        raise DecompositionError("sigma must be >= 2")
    if sigma == 2:
        return decompose(g, k, epsilon, t, variant, cfg)
    n = g.n
    check_k(n, k)
    q = root(n, k)
    ln_n = math.log(max(n, 1))
    a_bound = ceil_tol(cfg.c_degree * q * ln_n)

    def split(sg: Graph, ids, level):
        a, stars, led = _stars(sg, q, sigma - 1, cfg, ids, f"partition/L{level}")
        return a, stars, led, min(a_bound, max(sg.n - 1, 0))

    nd, trace, ledger = _recurse(
        g, k, epsilon, t, variant, cfg, split,
        lambda s, level: s <= cfg.c_threshold * q * ln_n,
        lambda dm, level: (2 * sigma - 1) * (dm + 1) - 1,
        cfg.c_degree * q * ln_n,
        f"sep-decompose/s{sigma}",
    )
    h = extract_h_partition(trace)
    col, led = relabel(g, nd, h, scheme, cfg, t=t, epsilon=epsilon, power=sigma - 1)
    ledger.absorb(led)
    return with_labels(nd, col, sigma=sigma), trace, ledger


def weak_sep_decompose(
    g: Graph,
    k: int,
    sigma: int = 3,
    cfg: SimConfig | None = None,
    *,
    epsilon: float = 0.5,
    t: int | None = UNTIL_FIXPOINT,
    variant: str = "threshold",
) -> tuple[NetworkDecomposition, DecomposeTrace, RoundLedger]:
    """Decompose the (sigma-1)-th power of g. Clusters are only weakly
    bounded (diameter measured in g): <= (sigma-1) * (3**(L-1) - 1)."""
    cfg = cfg or SimConfig()
    if sigma < 2:
        raise DecompositionError("sigma must be >= 2")
    check_k(g.n, k)
    if sigma == 2:
        return decompose(g, k, epsilon, t, variant, cfg)
    gp = power_graph(g, sigma - 1)
    nd, trace, led = decompose(gp, k, epsilon, t, variant, cfg)
    ledger = RoundLedger().absorb(led, sigma - 1, "power/")
    out = NetworkDecomposition(
        nd.clusters, nd.labels, nd.leaders, (sigma - 1) * nd.d, nd.l, sigma, nd.levels, "weak", dict(nd.extra)
    )
    return out, trace, ledger


def low_intersecting(
    g: Graph,
    k: int,
    gamma: int,
    cfg: SimConfig | None = None,
    *,
    epsilon: float = 0.5,
) -> tuple[LowIntersectingPartition, RoundLedger]:
    """A (2*gamma+1)-separated decomposition read as a partition in which
    every radius-gamma ball meets at most ``beta`` clusters."""
    if not (isinstance(gamma, int) and gamma >= 1):
        raise DecompositionError("gamma must be an integer >= 1")
    cfg = cfg or SimConfig()
    nd, _, ledger = sep_decompose(g, k, 2 * gamma + 1, cfg, epsilon=epsilon)
    alpha = math.ceil(nd.d / gamma)
    lip = LowIntersectingPartition(nd.clusters, alpha, nd.label_count, gamma, nd)
    rep = validate_low_intersecting(g, lip)
    if not rep.passed:
        raise AssertionError(f"low-intersecting audit failed: {rep.violations[:3]}")
    return LowIntersectingPartition(nd.clusters, alpha, nd.label_count, gamma, nd, rep), ledger


# -- skeleton spanner ----------------------------------------------------------------


def skeleton_spanner(g: Graph, nd: NetworkDecomposition) -> tuple[frozenset[tuple[int, int]], int]:
    """BFS tree of every cluster from its leader plus the smallest base edge
    between every adjacent cluster pair. Returns (edges, max edge stretch)."""
    edges: set[tuple[int, int]] = set()
    for c, lead in zip(nd.clusters, nd.leaders):
        depth = bfs_distances(g, lead, within=c)
        if len(depth) != len(c):
            raise DecompositionError(f"cluster led by {lead} is not connected in g")
        for v in c:
            if v == lead:
                continue
            parent = min(u for u in g.neighbors(v) if depth.get(u) == depth[v] - 1)
            edges.add((min(parent, v), max(parent, v)))
    owner = nd.cluster_of()
    picked: set[tuple[int, int]] = set()
    for u, v in g.edges():
        cu, cv = owner[u], owner[v]
        if cu != cv:
            key = (min(cu, cv), max(cu, cv))
            if key not in picked:
                picked.add(key)
                edges.add((u, v))
    rep = validate_stretch(g, edges, math.inf)
    return frozenset(edges), rep.extra["max_stretch"]
