"""Deterministic graph generators. Random ones draw from ``rng_for`` so a
(generator, parameters, seed) triple always yields the same graph."""

from __future__ import annotations

import heapq
import itertools

import numpy as np

from ._numeric import is_prime
from .graph import Graph, GraphError, build_graph
from .sim import rng_for

__all__ = [
    "gnp",
    "cycle",
    "path",
    "star",
    "grid",
    "complete",
    "petersen",
    "girth6",
    "random_tree",
    "random_bipartite",
    "GENERATORS",
]


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p); row u decides its pairs (u, v > u) from one stream."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise GraphError("gnp needs n >= 0 and 0 <= p <= 1")
    edges = []
    for u in range(1, n):
        draws = rng_for(seed, "gnp", u, 0).random(n - u)
        for off in np.flatnonzero(draws < p):
            edges.append((u, u + 1 + int(off)))
    return build_graph(n, edges)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs n >= 3")
    return build_graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("a path needs n >= 1")
    return build_graph(n, [(i, i + 1) for i in range(1, n)])


def star(n: int) -> Graph:
    """n vertices in total: center 1 and leaves 2..n."""
    if n < 1:
        raise GraphError("a star needs n >= 1")
    return build_graph(n, [(1, i) for i in range(2, n + 1)])


def grid(w: int, h: int) -> Graph:
    """w x h grid; vertex (x, y) has ID y*w + x + 1."""
    if w < 1 or h < 1:
        raise GraphError("grid sides must be >= 1")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x + 1
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return build_graph(w * h, edges)


def complete(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(1, n + 1), 2))


def petersen() -> Graph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    """Normalized nonzero vectors of F_q^3 (first nonzero coordinate 1)."""
    pts = []
    for v in itertools.product(range(q), repeat=3):
        nz = next((c for c in v if c), 0)
        if nz == 1:
            pts.append(v)
    return pts


def girth6(q: int) -> Graph:
    """Point-line incidence graph of the projective plane over F_q:
    2(q^2+q+1) vertices, (q+1)-regular, girth 6. Points come first."""
    if not is_prime(q):
        raise GraphError(f"girth6 needs a prime q, got {q}")
    pts = _projective_points(q)
    m = len(pts)
    edges = []
    for i, p in enumerate(pts):
        for j, line in enumerate(pts):
            if (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0:
                edges.append((i + 1, m + j + 1))
    return build_graph(2 * m, edges)


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform random labeled tree via a Pruefer sequence."""
    if n < 1:
        raise GraphError("a tree needs n >= 1")
    if n == 1:
        return build_graph(1, [])
    if n == 2:
        return build_graph(2, [(1, 2)])
    seq = [int(x) + 1 for x in rng_for(seed, "random-tree", n, 0).integers(0, n, n - 2)]
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return build_graph(n, edges)


def random_bipartite(a: int, b: int, p: float, seed: int = 0) -> Graph:
    """Sides 1..a and a+1..a+b; each cross pair present with probability p."""
    if a < 0 or b < 0 or not 0.0 <= p <= 1.0:
        raise GraphError("random_bipartite needs a, b >= 0 and 0 <= p <= 1")
    edges = []
    for u in range(1, a + 1):
        draws = rng_for(seed, "bipartite", u, 0).random(b)
        edges.extend((u, a + 1 + int(j)) for j in np.flatnonzero(draws < p))
    return build_graph(a + b, edges)


GENERATORS = {
    "gnp": gnp,
    "cycle": cycle,
    "path": path,
    "star": star,
    "grid": grid,
    "girth6": girth6,
    "random-tree": random_tree,
    "complete": complete,
    "petersen": petersen,
    "random-bipartite": random_bipartite,
}
