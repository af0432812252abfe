"""Randomized low-diameter network decomposition.

The recursion works on a sequence of supergraphs. At each level a random
sample D of supernodes grows stars of radius one; supernodes not touched by
any star (the A side) have low degree and are labeled right away with a
small-palette coloring, the stars are contracted and the process repeats on
the smaller supergraph. Each level's labels come from its own disjoint range
of the label space.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from ._numeric import ceil_tol, floor_tol, root
from .coloring import (
    UNTIL_FIXPOINT,
    Coloring,
    HPartition,
    arb_linial_color,
    effective_h_partition,
    h_partition_random_color,
    linial_color,
    random_color,
)
from .graph import Graph, SuperGraph, connected_components, contract, induced, power_graph, strong_diameter
from .sim import RoundLedger, SimConfig, uniform_for

__all__ = [
    "VARIANTS",
    "DecompositionError",
    "NetworkDecomposition",
    "LevelRecord",
    "DecomposeTrace",
    "check_k",
    "explore_assign",
    "partition",
    "dec_small",
    "decompose",
    "extract_h_partition",
    "relabel",
    "with_labels",
    "singleton_decomposition",
    "component_decomposition",
]

VARIANTS = ("threshold", "always-random", "always-linial")


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class NetworkDecomposition:
    """Clusters with labels and certified parameters.

    ``d`` bounds every cluster's diameter (strong unless ``mode == "weak"``),
    ``l`` bounds the number of labels, and equal-label clusters are at least
    ``sigma`` apart.
    """

    clusters: tuple[frozenset[int], ...]
    labels: tuple[int, ...]
    leaders: tuple[int, ...]
    d: int
    l: int
    sigma: int = 2
    levels: tuple[int, ...] = ()
    mode: str = "strong"
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not (len(self.clusters) == len(self.labels) == len(self.leaders)):
            raise DecompositionError("clusters, labels and leaders must align")
        if self.levels and len(self.levels) != len(self.clusters):
            raise DecompositionError("levels must align with clusters")
        if self.mode not in ("strong", "weak"):
            raise DecompositionError("mode must be 'strong' or 'weak'")

    def __len__(self) -> int:
        return len(self.clusters)

    @property
    def label_count(self) -> int:
        return len(set(self.labels))

    def cluster_of(self) -> dict[int, int]:
        """vertex -> 0-based cluster index."""
        return {v: i for i, c in enumerate(self.clusters) for v in c}

    def label_of(self) -> dict[int, int]:
        return {v: self.labels[i] for i, c in enumerate(self.clusters) for v in c}

    def supergraph(self, g: Graph) -> SuperGraph:
        return contract(g, self.clusters, self.leaders)

    def to_dict(self) -> dict:
        out = {
            "cert": {"d": self.d, "l": self.l, "sigma": self.sigma},
            "mode": self.mode,
            "clusters": [
                {"label": lab, "leader": lead, "members": sorted(c)}
                for c, lab, lead in zip(self.clusters, self.labels, self.leaders)
            ],
        }
        if self.levels:
            for rec, lvl in zip(out["clusters"], self.levels):
                rec["level"] = lvl
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> NetworkDecomposition:
        cert = data["cert"]
        cl = data["clusters"]
        extra = {k: v for k, v in data.items() if k not in ("cert", "clusters", "mode")}
        return cls(
            tuple(frozenset(int(v) for v in c["members"]) for c in cl),
            tuple(int(c["label"]) for c in cl),
            tuple(int(c["leader"]) for c in cl),
            cert["d"],
            int(cert["l"]),
            int(cert.get("sigma", 2)),
            tuple(int(c["level"]) for c in cl) if cl and all("level" in c for c in cl) else (),
            data.get("mode", "strong"),
            extra,
        )


@dataclass(frozen=True)
class LevelRecord:
    """What one recursion level did. Cluster indices refer to ``graph``."""

    level: int
    graph: Graph
    ids: tuple[int, ...]
    s: int
    diam: int
    a_side: tuple[int, ...]
    b_count: int
    terminal: bool
    degree_bound: int
    realized_degree: int
    palette: int
    offset: int
    clusters: tuple[frozenset[int], ...] = field(repr=False)

    @property
    def degree_violation(self) -> bool:
        return self.realized_degree > self.degree_bound


@dataclass
class DecomposeTrace:
    n: int
    k: int
    levels: list[LevelRecord] = field(default_factory=list)
    h_degree_bound: float = 0.0
    complete: bool = False
    # per output cluster: (level, index in that level's supergraph)
    origin: list[tuple[int, int]] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def degree_violations(self) -> list[int]:
        return [r.level for r in self.levels if r.degree_violation]


def check_k(n: int, k: int) -> None:
    hi = max(1.0, math.log2(n)) if n >= 1 else 1.0
    if not (isinstance(k, int) and 1 <= k <= hi + 1e-12):
        raise DecompositionError(f"k must be an integer in 1..log2(n) (n={n}), got {k!r}")


# -- partition ---------------------------------------------------------------------


def explore_assign(
    g: Graph, sources: Sequence[int], radius: int, key: Sequence[int]
) -> tuple[dict[int, int], dict[int, int]]:
    """Grow all sources simultaneously up to ``radius`` hops. Each reached
    vertex joins a closest source, ties to the smallest ``key``.

    Returns (owner, distance). Every cluster is connected: a vertex's
    shortest path to its owner stays inside the owner's cluster.
    """
    owner = {s: s for s in sources}
    dist = {s: 0 for s in sources}
    frontier = sorted(sources)
    r = 0
    while frontier and r < radius:
        r += 1
        cand: dict[int, int] = {}
        for u in frontier:
            ou = owner[u]
            for w in g.neighbors(u):
                if w in dist:
                    continue
                prev = cand.get(w)
                if prev is None or key[ou] < key[prev]:
                    cand[w] = ou
        for w, o in cand.items():
            owner[w] = o
            dist[w] = r
        frontier = sorted(cand)
    return owner, dist


def _sample(g: Graph, q: float, cfg: SimConfig, ids: Sequence[int], scope: str) -> list[int]:
    if q < 1:
        raise DecompositionError("q must be >= 1")
    return [v for v in g.vertices if uniform_for(cfg.seed, scope, ids[v], 0) < 1.0 / q]


def _stars(
    g: Graph, q: float, radius: int, cfg: SimConfig, ids: Sequence[int], scope: str
) -> tuple[list[int], list[tuple[int, list[int]]], RoundLedger]:
    d_set = _sample(g, q, cfg, ids, scope)
    owner, _ = explore_assign(g, d_set, radius, ids)
    groups: dict[int, list[int]] = {c: [] for c in d_set}
    for v in sorted(owner):
        groups[owner[v]].append(v)
    a_side = [v for v in g.vertices if v not in owner]
    stars = [(c, groups[c]) for c in sorted(d_set, key=lambda c: ids[c])]
    ledger = RoundLedger().charge(scope, radius + 1)
    return a_side, stars, ledger


def partition(
    g: Graph, q: float, cfg: SimConfig, *, ids: Sequence[int] | None = None, level: int = 1
) -> tuple[frozenset[int], SuperGraph, RoundLedger]:
    """Sample D at rate 1/q; D and its neighbors form stars around D
    members (a neighbor joins its smallest-ID D neighbor); everything else
    is returned as A."""
    ids = range(g.n + 1) if ids is None else ids
    a_side, stars, ledger = _stars(g, q, 1, cfg, ids, f"partition/L{level}")
    sg = contract(g, [m for _, m in stars], [c for c, _ in stars])
    return frozenset(a_side), sg, ledger


# -- Dec-Small ---------------------------------------------------------------------


def _dec_small_coloring(
    g: Graph,
    n_orig: int,
    d: int,
    epsilon: float,
    t: int | None,
    variant: str,
    cfg: SimConfig,
    ids: Sequence[int],
    scope: str,
) -> tuple[Coloring, RoundLedger, str]:
    if variant not in VARIANTS:
        raise DecompositionError(f"variant must be one of {VARIANTS}")
    if g.max_degree > d:
        raise DecompositionError(f"max degree {g.max_degree} exceeds the declared bound {d}")
    if variant == "always-linial" or (variant == "threshold" and d <= n_orig**epsilon + 1e-12):
        col, led = linial_color(g, t, ids=ids, id_space=max(n_orig, max(ids, default=1)))
        return col, led, "linial"
    col, led = random_color(g, epsilon, cfg, ids=ids, degree_bound=d, n_palette=n_orig, scope=scope)
    return col, led, "random-color"


def dec_small(
    g: Graph,
    n_orig: int,
    d: int,
    epsilon: float,
    t: int | None = UNTIL_FIXPOINT,
    variant: str = "threshold",
    cfg: SimConfig | None = None,
) -> tuple[NetworkDecomposition, RoundLedger]:
    """Label every vertex as its own cluster with a proper coloring: Linial
    when d <= n_orig**eps, random trials otherwise."""
    cfg = cfg or SimConfig()
    col, led, _ = _dec_small_coloring(g, n_orig, d, epsilon, t, variant, cfg, range(g.n + 1), "dec-small")
    return singleton_decomposition(g, col), led


def singleton_decomposition(g: Graph, col: Coloring) -> NetworkDecomposition:
    vs = list(g.vertices)
    return NetworkDecomposition(
        tuple(frozenset((v,)) for v in vs),
        tuple(col[v] for v in vs),
        tuple(vs),
        0,
        col.palette,
        levels=tuple(1 for _ in vs),
    )


def component_decomposition(g: Graph, sigma: int = 2) -> NetworkDecomposition:
    """One cluster per connected component, all with label 1."""
    comps = sorted(connected_components(g), key=min)
    diam = max((int(strong_diameter(g, c)) for c in comps), default=0)
    return NetworkDecomposition(
        tuple(comps),
        tuple(1 for _ in comps),
        tuple(min(c) for c in comps),
        diam,
        1,
        sigma,
        tuple(1 for _ in comps),
    )


# -- the recursion -----------------------------------------------------------------

# A level strategy returns (a_side, stars, ledger, degree_bound_for_a_side).
LevelSplit = Callable[[Graph, Sequence[int], int], tuple[list[int], list[tuple[int, list[int]]], RoundLedger, int]]


def _recurse(
    g: Graph,
    k: int,
    epsilon: float,
    t: int | None,
    variant: str,
    cfg: SimConfig,
    split: LevelSplit,
    should_stop: Callable[[int, int], bool],
    grow: Callable[[int, int], int],
    h_bound: float,
    name: str,
) -> tuple[NetworkDecomposition, DecomposeTrace, RoundLedger]:
    """Shared skeleton. ``grow(diam, level)`` maps one level's cluster
    diameter bound to the next; ``should_stop(s, level)`` is the early
    termination test."""
    n = g.n
    check_k(n, k)
    trace = DecomposeTrace(n, k, h_degree_bound=h_bound)
    ledger = RoundLedger()
    out_clusters: list[frozenset[int]] = []
    out_leaders: list[int] = []
    out_levels: list[int] = []
    out_colors: list[tuple[int, int]] = []  # (level, color)

    clusters = [frozenset((v,)) for v in g.vertices]
    leaders = list(g.vertices)
    sg_graph = g
    diam = 0
    level = 0
    palettes: list[int] = []
    while clusters:
        level += 1
        s = len(clusters)
        ids = [0, *leaders]
        mult = diam + 1
        terminal = level >= k or should_stop(s, level)
        if terminal:
            a_side, stars, split_led, d_bound = list(range(1, s + 1)), [], RoundLedger(), max(s - 1, 0)
        else:
            a_side, stars, split_led, d_bound = split(sg_graph, ids, level)
            ledger.absorb(split_led, mult, f"L{level}/")
        sub, back = induced(sg_graph, a_side)
        realized = sub.max_degree
        d_used = max(d_bound, realized)
        sub_ids = [0] + [ids[back[i]] for i in range(1, sub.n + 1)]
        col, led, _ = _dec_small_coloring(
            sub, n, d_used, epsilon, t, variant, cfg, sub_ids, f"{name}/dec-small/L{level}"
        )
        ledger.absorb(led, mult, f"L{level}/")
        palettes.append(col.palette if sub.n else 0)
        for i in range(1, sub.n + 1):
            c = back[i]
            out_clusters.append(clusters[c - 1])
            out_leaders.append(leaders[c - 1])
            out_levels.append(level)
            out_colors.append((level, col[i]))
            trace.origin.append((level, c))
        trace.levels.append(
            LevelRecord(
                level, sg_graph, tuple(ids), s, diam, tuple(a_side), len(stars), terminal,
                d_bound, realized, palettes[-1], 0, tuple(clusters),
            )
        )
        if terminal or not stars:
            break
        new = []
        for c, members in stars:
            new.append((leaders[c - 1], frozenset().union(*(clusters[m - 1] for m in members))))
        new.sort()
        leaders = [lead for lead, _ in new]
        clusters = [cl for _, cl in new]
        sg_graph = contract(g, clusters, leaders).graph
        diam = grow(diam, level)
    # label offsets
    if cfg.gamma_mode == "exact":
        offsets = [0]
        for p in palettes:
            offsets.append(offsets[-1] + p)
        stride_total = offsets[-1]
        stride = None
    else:
        lam = max(1, floor_tol(root(n, k) ** 2 * math.log2(max(n, 2)) ** 2))
        gamma = max(1, max((ceil_tol(p / lam) for p in palettes), default=1))
        stride = gamma * lam
        offsets = [i * stride for i in range(len(palettes) + 1)]
        stride_total = stride * len(palettes)
    trace.levels = [
        LevelRecord(**{**r.__dict__, "offset": offsets[r.level - 1]}) for r in trace.levels
    ]
    labels = tuple(offsets[lv - 1] + c for lv, c in out_colors)
    max_level = max(out_levels, default=1)
    cert_d = 0
    for lv in range(1, max_level):
        cert_d = grow(cert_d, lv)
    trace.complete = True
    nd = NetworkDecomposition(
        tuple(out_clusters),
        labels,
        tuple(out_leaders),
        cert_d,
        max(1, stride_total),
        2,
        tuple(out_levels),
        extra={"depth": len(palettes), "palettes": palettes, **({"stride": stride} if stride else {})},
    )
    return nd, trace, ledger


def decompose(
    g: Graph,
    k: int,
    epsilon: float = 0.5,
    t: int | None = UNTIL_FIXPOINT,
    variant: str = "threshold",
    cfg: SimConfig | None = None,
) -> tuple[NetworkDecomposition, DecomposeTrace, RoundLedger]:
    """Strong decomposition with cluster diameter <= 3**(L-1) - 1 where L <= k
    is the realized depth."""
    cfg = cfg or SimConfig()
    if not 0 < epsilon <= 1:
        raise DecompositionError("epsilon must be in (0, 1]")
    n = g.n
    check_k(n, k)
    q = root(n, k)
    ln_n = math.log(max(n, 1))
    stop_at = cfg.c_threshold * q * ln_n
    a_bound = ceil_tol(cfg.c_degree * q * ln_n)

    def split(sg: Graph, ids, level):
        a, stars, led = _stars(sg, q, 1, cfg, ids, f"partition/L{level}")
        return a, stars, led, min(a_bound, max(sg.n - 1, 0))

    return _recurse(
        g, k, epsilon, t, variant, cfg, split,
        lambda s, level: s <= stop_at,
        lambda dm, level: 3 * (dm + 1) - 1,
        cfg.c_degree * q * ln_n,
        "decompose",
    )


def extract_h_partition(trace: DecomposeTrace) -> HPartition:
    """Bands S_1..S_L as sets of 1-based cluster indices of the output
    decomposition (cluster order = ``trace.origin`` order)."""
    if not trace.complete:
        raise DecompositionError("trace is incomplete")
    bands: list[set[int]] = [set() for _ in trace.levels]
    for idx, (lvl, _) in enumerate(trace.origin, start=1):
        bands[lvl - 1].add(idx)
    return HPartition.of(bands, trace.h_degree_bound)


# -- relabeling ---------------------------------------------------------------------


def relabel(
    g: Graph,
    nd: NetworkDecomposition,
    h: HPartition,
    scheme: str = "arb-linial",
    cfg: SimConfig | None = None,
    *,
    t: int | None = UNTIL_FIXPOINT,
    epsilon: float = 0.5,
    power: int = 1,
) -> tuple[Coloring, RoundLedger]:
    """Fresh labels for the clusters of ``nd`` from an H-partition of its
    cluster supergraph (raised to ``power`` when a larger separation is
    wanted). The bound of ``h`` is lifted to the realized forward degree if
    it is exceeded, since palette guarantees depend only on the realized one.
    """
    cfg = cfg or SimConfig()
    sg = nd.supergraph(g).graph
    if power > 1:
        sg = power_graph(sg, power)
    if h.ground != frozenset(sg.vertices):
        raise DecompositionError("H-partition does not cover the cluster supergraph")
    h = effective_h_partition(sg, h)
    ids = [0, *nd.leaders]
    if scheme == "arb-linial":
        col, led = arb_linial_color(sg, h, t, ids=ids, id_space=max(g.n, 1))
    elif scheme == "h-random":
        col, led = h_partition_random_color(sg, h, epsilon, cfg, ids=ids, n_palette=g.n)
    else:
        raise DecompositionError("scheme must be 'arb-linial' or 'h-random'")
    out = RoundLedger().absorb(led, power * (int(nd.d) + 1), "relabel/")
    return col, out


def with_labels(nd: NetworkDecomposition, col: Coloring, sigma: int | None = None) -> NetworkDecomposition:
    labels = tuple(col[i] for i in range(1, len(nd) + 1))
    return NetworkDecomposition(
        nd.clusters, labels, nd.leaders, nd.d, col.palette,
        nd.sigma if sigma is None else sigma, nd.levels, nd.mode, dict(nd.extra),
    )

