"""Simple undirected graphs with dense vertex IDs 1..n, plus the metric
queries and structural transforms every algorithm in the package runs on.

Distances to unreachable vertices are reported as ``math.inf`` so they can
never be confused with a real hop count.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

__all__ = [
    "UNREACHABLE",
    "GraphError",
    "Graph",
    "SuperGraph",
    "build_graph",
    "bfs_distances",
    "dist",
    "ball",
    "ball_of_set",
    "power_graph",
    "induced",
    "contract",
    "strong_diameter",
    "weak_diameter",
    "girth",
    "connected_components",
    "has_triangle",
    "read_graph",
    "write_graph",
    "format_graph",
    "parse_graph",
]

UNREACHABLE = math.inf


class GraphError(ValueError):
    """Raised on malformed graph input."""


class Graph:
    """Immutable simple undirected graph on vertices ``1..n``.

    Neighbor lists are kept sorted, so every iteration order in the package
    (and every tie-break that depends on it) is deterministic.
    """

    __slots__ = ("_n", "_adj", "_m")

    def __init__(self, n: int, adj: list[tuple[int, ...]]):
        # adj[0] is a placeholder so that adj[v] is vertex v's neighbor tuple
        self._n = n
        self._adj = tuple(adj)
        self._m = sum(len(a) for a in adj) // 2

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> range:
        return range(1, self._n + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        """Gamma^+(v): v together with its neighbors."""
        return frozenset(self.neighbors(v)) | {v}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        a = self._adj[u]
        # binary search on the sorted neighbor tuple
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as ``(u, v)`` with ``u < v``, sorted."""
        for u in self.vertices:
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def _check(self, v: int) -> None:
        if not (isinstance(v, int) and 1 <= v <= self._n):
            raise GraphError(f"vertex {v!r} is not in 1..{self._n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a canonical graph, rejecting self-loops, duplicates and
    out-of-range endpoints."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    nbrs: list[set[int]] = [set() for _ in range(n + 1)]
    for e in edges:
        u, v = e
        for x in (u, v):
            if not (isinstance(x, int) and 1 <= x <= n):
                raise GraphError(f"endpoint {x!r} out of range 1..{n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            raise GraphError(f"duplicate edge ({u}, {v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, [tuple(sorted(s)) for s in nbrs])


def _from_neighbor_sets(n: int, nbrs: list[set[int]]) -> Graph:
    return Graph(n, [tuple(sorted(s)) for s in nbrs])


def bfs_distances(
    g: Graph,
    sources: int | Iterable[int],
    radius: float = math.inf,
    within: frozenset[int] | set[int] | None = None,
) -> dict[int, int]:
    """Multi-source BFS. Returns hop distances of every vertex reached within
    ``radius``; when ``within`` is given, the search never leaves that set."""
    if isinstance(sources, int):
        sources = (sources,)
    out: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        g._check(s)
        if within is not None and s not in within:
            continue
        if s not in out:
            out[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        du = out[u]
        if du >= radius:
            continue
        for w in g._adj[u]:
            if w in out or (within is not None and w not in within):
                continue
            out[w] = du + 1
            queue.append(w)
    return out


def dist(g: Graph, u: int, v: int) -> float:
    """Hop distance between ``u`` and ``v``; ``UNREACHABLE`` if disconnected."""
    g._check(v)
    return bfs_distances(g, u).get(v, UNREACHABLE)


def ball(g: Graph, v: int, r: float) -> frozenset[int]:
    if r < 0:
        raise GraphError("radius must be non-negative")
    return frozenset(bfs_distances(g, v, radius=r))


def ball_of_set(g: Graph, s: Iterable[int], r: float) -> frozenset[int]:
    """All vertices within distance ``r`` of some member of ``s``."""
    return frozenset(bfs_distances(g, s, radius=r))


def power_graph(g: Graph, r: int) -> Graph:
    """Edge (u, v) iff 1 <= dist_g(u, v) <= r."""
    if r < 1:
        raise GraphError("power radius must be >= 1")
    if r == 1:
        return g
    nbrs = [set() for _ in range(g.n + 1)]
    for v in g.vertices:
        reach = bfs_distances(g, v, radius=r)
        del reach[v]
        nbrs[v] = set(reach)
    return _from_neighbor_sets(g.n, nbrs)


def induced(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``s``, relabeled to 1..|s| in ascending ID order.

    Returns the graph and ``back`` with ``back[i]`` = original ID of new
    vertex ``i`` (``back[0]`` is unused).
    """
    members = sorted(set(s))
    for v in members:
        g._check(v)
    fwd = {v: i for i, v in enumerate(members, start=1)}
    adj: list[tuple[int, ...]] = [()]
    for v in members:
        adj.append(tuple(fwd[w] for w in g._adj[v] if w in fwd))
    return Graph(len(members), adj), [0, *members]


@dataclass(frozen=True)
class SuperGraph:
    """A contraction of ``base``: cluster ``i`` (1-based) becomes supervertex
    ``i`` of ``graph``, simulated by ``leaders[i-1]``."""

    base: Graph
    clusters: tuple[frozenset[int], ...]
    leaders: tuple[int, ...]
    graph: Graph
    cluster_of: dict[int, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.clusters)

    @property
    def members(self) -> frozenset[int]:
        return frozenset().union(*self.clusters) if self.clusters else frozenset()


def contract(g: Graph, clusters: Iterable[Iterable[int]], leaders: Iterable[int]) -> SuperGraph:
    """Contract disjoint clusters. Clusters keep the given order."""
    cl = tuple(frozenset(c) for c in clusters)
    ld = tuple(leaders)
    if len(cl) != len(ld):
        raise GraphError("need exactly one leader per cluster")
    owner: dict[int, int] = {}
    for i, (c, lead) in enumerate(zip(cl, ld), start=1):
        if not c:
            raise GraphError(f"cluster {i} is empty")
        if lead not in c:
            raise GraphError(f"leader {lead} is not inside cluster {i}")
        for v in c:
            g._check(v)
            if v in owner:
                raise GraphError(f"clusters {owner[v]} and {i} overlap at vertex {v}")
            owner[v] = i
    nbrs: list[set[int]] = [set() for _ in range(len(cl) + 1)]
    for u, v in g.edges():
        cu, cv = owner.get(u), owner.get(v)
        if cu is not None and cv is not None and cu != cv:
            nbrs[cu].add(cv)
            nbrs[cv].add(cu)
    return SuperGraph(g, cl, ld, _from_neighbor_sets(len(cl), nbrs), owner)


def _eccentricities_within(g: Graph, c: frozenset[int]) -> float:
    best = 0
    for v in c:
        d = bfs_distances(g, v, within=c)
        if len(d) < len(c):
            return UNREACHABLE
        best = max(best, max(d.values()))
    return best


def strong_diameter(g: Graph, c: Iterable[int]) -> float:
    """Diameter of the subgraph induced by ``c``; ``UNREACHABLE`` when that
    subgraph is disconnected."""
    c = frozenset(c)
    if not c:
        raise GraphError("cluster is empty")
    return _eccentricities_within(g, c)


def weak_diameter(g: Graph, c: Iterable[int]) -> float:
    """max dist_g(u, v) over u, v in ``c`` (paths may leave the cluster)."""
    c = frozenset(c)
    if not c:
        raise GraphError("cluster is empty")
    best = 0
    for v in c:
        d = bfs_distances(g, v)
        for u in c:
            if u not in d:
                return UNREACHABLE
            best = max(best, d[u])
    return best


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for s in g.vertices:
        depth = {s: 0}
        parent = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * depth[u] + 1 >= best:
                break
            for w in g._adj[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, depth[u] + depth[w] + 1)
    return best


def has_triangle(g: Graph) -> tuple[int, int, int] | None:
    """A triangle witness, or None for triangle-free graphs."""
    for u, v in g.edges():
        common = set(g._adj[u]).intersection(g._adj[v])
        if common:
            return (u, v, min(common))
    return None


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for v in g.vertices:
        if v not in seen:
            comp = frozenset(bfs_distances(g, v))
            seen |= comp
            comps.append(comp)
    return comps


# -- text format -------------------------------------------------------------
# first line "n m", then m lines "u v"; '#' starts a comment


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("empty graph file")
    try:
        header = [int(x) for x in rows[0]]
        body = [tuple(int(x) for x in r) for r in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"non-integer token: {exc}") from None
    if len(header) != 2:
        raise GraphError("header must be 'n m'")
    n, m = header
    if any(len(r) != 2 for r in body):
        raise GraphError("edge lines must be 'u v'")
    if len(body) != m:
        raise GraphError(f"header declares {m} edges, found {len(body)}")
    return build_graph(n, body)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(g))
