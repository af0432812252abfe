"""Exact brute-force oracles and structural validators.

Oracles refuse inputs above their caps instead of approximating: a wrong
"optimum" would silently corrupt every ratio checked against it.
Validators never raise on bad input; they collect violations.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable
from dataclasses import dataclass, field

from .coloring import Coloring, HPartition
from .graph import Graph, GraphError, bfs_distances, connected_components, strong_diameter, weak_diameter

__all__ = [
    "CHROMATIC_CAP",
    "MDS_CAP",
    "SPANNER_EDGE_CAP",
    "OracleCapError",
    "ValidationReport",
    "brute_chromatic",
    "brute_mds",
    "brute_min_t_spanner",
    "validate_decomposition",
    "validate_h_partition",
    "validate_stretch",
    "validate_all_pairs_stretch",
    "validate_coloring",
    "validate_domination",
    "validate_ruling_set",
    "validate_low_intersecting",
    "validate_charging",
]

CHROMATIC_CAP = 20
MDS_CAP = 20
SPANNER_EDGE_CAP = 25


class OracleCapError(ValueError):
    """Instance is larger than the oracle is willing to solve exactly."""


@dataclass
class ValidationReport:
    violations: list[tuple[str, object]] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, rule: str, witness: object) -> None:
        self.violations.append((rule, witness))

    def rules(self) -> set[str]:
        return {r for r, _ in self.violations}

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [{"rule": r, "witness": _jsonable(w)} for r, w in self.violations],
            **{k: _jsonable(v) for k, v in self.extra.items()},
        }


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


# -- chromatic number --------------------------------------------------------------


def _greedy_clique(g: Graph) -> list[int]:
    best: list[int] = []
    for s in g.vertices:
        clique = [s]
        cand = set(g.neighbors(s))
        while cand:
            v = max(sorted(cand), key=lambda w: len(cand.intersection(g.neighbors(w))))
            clique.append(v)
            cand &= set(g.neighbors(v))
        if len(clique) > len(best):
            best = clique
    return best


def _k_colorable(g: Graph, k: int) -> dict[int, int] | None:
    """Backtracking with a most-constrained-vertex order."""
    colors: dict[int, int] = {}
    order_deg = {v: g.degree(v) for v in g.vertices}

    def pick() -> int | None:
        best, key = None, None
        for v in g.vertices:
            if v in colors:
                continue
            sat = len({colors[u] for u in g.neighbors(v) if u in colors})
            kk = (sat, order_deg[v], -v)
            if key is None or kk > key:
                best, key = v, kk
        return best

    def go() -> bool:
        v = pick()
        if v is None:
            return True
        used = {colors[u] for u in g.neighbors(v) if u in colors}
        top = max(colors.values(), default=0)
        # symmetry breaking: never open more than one fresh color
        for c in range(1, min(k, top + 1) + 1):
            if c not in used:
                colors[v] = c
                if go():
                    return True
                del colors[v]
        return False

    return dict(colors) if go() else None


def brute_chromatic(g: Graph) -> tuple[int, Coloring]:
    """Exact chromatic number with a witness coloring (n <= 20)."""
    if g.n > CHROMATIC_CAP:
        raise OracleCapError(f"chromatic oracle capped at n <= {CHROMATIC_CAP}, got {g.n}")
    if g.n == 0:
        return 0, Coloring({}, 1)
    lower = len(_greedy_clique(g))
    upper = g.max_degree + 1
    for k in range(lower, upper + 1):
        col = _k_colorable(g, k)
        if col is not None:
            witness = Coloring(col, k)
            if not witness.is_proper(g) or not lower <= k <= upper:
                raise AssertionError("chromatic oracle sanity check failed")
            return k, witness
    raise AssertionError("no coloring with max degree + 1 colors; impossible")


# -- dominating set -------------------------------------------------------------------


def brute_mds(g: Graph) -> tuple[int, frozenset[int]]:
    """Minimum dominating set by enumeration in increasing size (n <= 20)."""
    if g.n > MDS_CAP:
        raise OracleCapError(f"MDS oracle capped at n <= {MDS_CAP}, got {g.n}")
    if g.n == 0:
        return 0, frozenset()
    full = (1 << g.n) - 1
    cover = [0] * (g.n + 1)
    for v in g.vertices:
        m = 1 << (v - 1)
        for u in g.neighbors(v):
            m |= 1 << (u - 1)
        cover[v] = m
    # isolated vertices are forced
    forced = [v for v in g.vertices if g.degree(v) == 0]
    base = 0
    for v in forced:
        base |= cover[v]
    rest = [v for v in g.vertices if v not in set(forced)]
    for r in range(0, len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            m = base
            for v in combo:
                m |= cover[v]
            if m == full:
                return len(forced) + r, frozenset(forced) | frozenset(combo)
    raise AssertionError("V itself dominates; unreachable")


# -- minimum t-spanner ------------------------------------------------------------------


def _short_paths(g: Graph, edges: list[tuple[int, int]], t: int) -> list[list[int]]:
    """For every edge, the edge-bitmasks of all simple u-v paths of length
    2..t that avoid the edge itself."""
    index = {e: i for i, e in enumerate(edges)}

    def eid(a: int, b: int) -> int:
        return index[(a, b) if a < b else (b, a)]

    out = []
    for u, v in edges:
        masks = []
        own = eid(u, v)

        def walk(x: int, seen: set[int], mask: int, length: int):
            if length >= t:
                return
            for y in g.neighbors(x):
                if y in seen:
                    continue
                e = eid(x, y)
                if e == own:
                    continue
                if y == v:
                    masks.append(mask | (1 << e))
                    continue
                seen.add(y)
                walk(y, seen, mask | (1 << e), length + 1)
                seen.discard(y)

        walk(u, {u}, 0, 0)
        out.append(masks)
    return out


def brute_min_t_spanner(g: Graph, t: int) -> tuple[int, frozenset[tuple[int, int]]]:
    """Fewest edges H with dist_H(u, v) <= t for every edge (u, v).

    Enumerates candidate edge sets in increasing size. Edges with no
    alternative path of length <= t are in every t-spanner, and no spanner
    has fewer than n - (#components) edges, so enumeration starts there.
    """
    edges = list(g.edges())
    if len(edges) > SPANNER_EDGE_CAP:
        raise OracleCapError(f"spanner oracle capped at |E| <= {SPANNER_EDGE_CAP}, got {len(edges)}")
    if t < 1:
        raise ValueError("t must be >= 1")
    paths = _short_paths(g, edges, t)
    forced = [i for i, p in enumerate(paths) if not p]
    optional = [i for i, p in enumerate(paths) if p]
    base = 0
    for i in forced:
        base |= 1 << i
    lower = max(len(forced), g.n - len(connected_components(g)))
    for r in range(max(0, lower - len(forced)), len(optional) + 1):
        for combo in itertools.combinations(optional, r):
            h = base
            for i in combo:
                h |= 1 << i
            if all(h >> i & 1 or any(p & h == p for p in paths[i]) for i in optional):
                return len(forced) + r, frozenset(edges[i] for i in range(len(edges)) if h >> i & 1)
    raise AssertionError("E itself is a t-spanner; unreachable")


# -- validators ---------------------------------------------------------------------------


def validate_coloring(g: Graph, col: Coloring) -> ValidationReport:
    rep = ValidationReport()
    for u, v in col.conflicts(g):
        rep.add("uncolored" if u == v else "proper-coloring", (u, v))
    rep.extra["palette"] = col.palette
    rep.extra["colors_used"] = col.num_colors
    return rep


def validate_domination(g: Graph, d: Iterable[int], targets: Iterable[int] | None = None) -> ValidationReport:
    dom = set(d)
    rep = ValidationReport()
    for v in targets if targets is not None else g.vertices:
        if v not in dom and not dom.intersection(g.neighbors(v)):
            rep.add("undominated", v)
    return rep


def validate_decomposition(g: Graph, nd, mode: str | None = None) -> ValidationReport:
    """Partition, diameter, proper labels, label count and separation."""
    mode = mode or getattr(nd, "mode", "strong")
    rep = ValidationReport()
    owner: dict[int, int] = {}
    for i, c in enumerate(nd.clusters):
        if not c:
            rep.add("partition", ("empty-cluster", i))
        for v in c:
            if not (isinstance(v, int) and 1 <= v <= g.n):
                rep.add("partition", ("unknown-vertex", v))
            elif v in owner:
                rep.add("partition", ("overlap", v, owner[v], i))
            else:
                owner[v] = i
    missing = [v for v in g.vertices if v not in owner]
    if missing:
        rep.add("partition", ("uncovered", missing[:10]))
    if not rep.passed:
        return rep
    for i, (c, lead) in enumerate(zip(nd.clusters, nd.leaders)):
        if lead not in c:
            rep.add("leader", (i, lead))
    worst = 0
    for i, c in enumerate(nd.clusters):
        dm = strong_diameter(g, c) if mode == "strong" else weak_diameter(g, c)
        worst = max(worst, dm)
        if dm > nd.d:
            rep.add("diameter", (i, dm, nd.d))
    rep.extra["max_diameter"] = worst
    labels = nd.labels
    for u, v in g.edges():
        cu, cv = owner[u], owner[v]
        if cu != cv and labels[cu] == labels[cv]:
            rep.add("proper-labels", (cu, cv, (u, v)))
    count = len(set(labels))
    rep.extra["label_count"] = count
    if count > nd.l:
        rep.add("label-count", (count, nd.l))
    if nd.sigma > 2:
        for i, c in enumerate(nd.clusters):
            near = bfs_distances(g, c, radius=nd.sigma - 1)
            for v, dv in near.items():
                j = owner[v]
                if j != i and labels[j] == labels[i]:
                    rep.add("separation", (i, j, dv))
                    break
    return rep


def validate_h_partition(g: Graph, h: HPartition, ground: Iterable[int] | None = None) -> ValidationReport:
    rep = ValidationReport()
    idx: dict[int, int] = {}
    for i, b in enumerate(h.bands, start=1):
        for v in b:
            if v in idx:
                rep.add("disjoint", (v, idx[v], i))
            idx[v] = i
    expect = set(g.vertices) if ground is None else set(ground)
    if set(idx) != expect:
        rep.add("coverage", sorted(expect.symmetric_difference(idx))[:10])
    worst = 0
    for v, i in idx.items():
        if not 1 <= v <= g.n:
            continue
        fwd = [u for u in g.neighbors(v) if idx.get(u, 0) >= i]
        worst = max(worst, len(fwd))
        if len(fwd) > h.degree_bound:
            rep.add("forward-degree", (v, len(fwd), h.degree_bound))
    rep.extra["max_forward_degree"] = worst
    return rep


def validate_stretch(g: Graph, h: Iterable[tuple[int, int]], t: float) -> ValidationReport:
    """Every edge of g must have a path of length <= t in h."""
    rep = ValidationReport()
    hs = set()
    adj: list[list[int]] = [[] for _ in range(g.n + 1)]
    for u, v in h:
        a, b = min(u, v), max(u, v)
        if (a, b) in hs:
            continue
        try:
            ok = g.has_edge(a, b)
        except GraphError:
            ok = False
        if not ok:
            rep.add("not-subgraph", (a, b))
            continue
        hs.add((a, b))
        adj[a].append(b)
        adj[b].append(a)
    hg = Graph(g.n, [tuple(sorted(x)) for x in adj])
    worst = 0 if g.m else 0
    for u in g.vertices:
        later = [v for v in g.neighbors(u) if v > u]
        if not later:
            continue
        d = bfs_distances(hg, u)
        for v in later:
            dv = d.get(v, math.inf)
            worst = max(worst, dv)
            if dv > t:
                rep.add("stretch", ((u, v), dv))
    rep.extra["max_stretch"] = worst
    rep.extra["edges"] = len(hs)
    return rep


def validate_all_pairs_stretch(g: Graph, h: Iterable[tuple[int, int]], t: float) -> ValidationReport:
    """Reference check over all vertex pairs (used to cross-check the
    per-edge reduction)."""
    rep = ValidationReport()
    adj: list[set[int]] = [set() for _ in range(g.n + 1)]
    for u, v in h:
        adj[u].add(v)
        adj[v].add(u)
    hg = Graph(g.n, [tuple(sorted(x)) for x in adj])
    for u in g.vertices:
        dg = bfs_distances(g, u)
        dh = bfs_distances(hg, u)
        for v, d in dg.items():
            if v > u and dh.get(v, math.inf) > t * d:
                rep.add("stretch", ((u, v), dh.get(v, math.inf), d))
    return rep


def validate_ruling_set(g: Graph, rs) -> ValidationReport:
    rep = ValidationReport()
    members = sorted(rs.members)
    if not set(members) <= set(rs.universe):
        rep.add("members-in-universe", sorted(set(members) - set(rs.universe))[:10])
    mset = set(members)
    for w in members:
        near = bfs_distances(g, w, radius=rs.sep - 1)
        for x in near:
            if x != w and x in mset:
                rep.add("separation", (w, x, near[x]))
    d = bfs_distances(g, members) if members else {}
    for u in rs.universe:
        if d.get(u, math.inf) > rs.dom:
            rep.add("domination", (u, d.get(u, math.inf)))
    return rep


def validate_low_intersecting(g: Graph, lip) -> ValidationReport:
    rep = ValidationReport()
    owner = {}
    for i, c in enumerate(lip.clusters):
        for v in c:
            owner[v] = i
        dm = strong_diameter(g, c)
        if dm > lip.alpha * lip.gamma:
            rep.add("diameter", (i, dm, lip.alpha * lip.gamma))
    if set(owner) != set(g.vertices):
        rep.add("partition", "clusters do not cover V")
        return rep
    worst = 0
    for v in g.vertices:
        hit = {owner[u] for u in bfs_distances(g, v, radius=lip.gamma)}
        worst = max(worst, len(hit))
        if len(hit) > lip.beta:
            rep.add("ball-intersection", (v, len(hit), lip.beta))
    rep.extra["max_ball_intersections"] = worst
    return rep


def validate_charging(g: Graph, nd) -> ValidationReport:
    """Clusters sharing a label must have pairwise disjoint closed
    neighborhoods Gamma+(C)."""
    rep = ValidationReport()
    seen: dict[int, dict[int, int]] = {}
    for i, (c, lab) in enumerate(zip(nd.clusters, nd.labels)):
        nb = set(c)
        for v in c:
            nb.update(g.neighbors(v))
        book = seen.setdefault(lab, {})
        for x in nb:
            j = book.get(x)
            if j is not None and j != i:
                rep.add("disjoint-neighborhoods", (lab, j, i, x))
                break
            book[x] = i
    return rep
