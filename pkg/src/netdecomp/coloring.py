"""Coloring primitives: union-free families, Linial color reduction (plain
and oriented), randomized trial coloring, and H-partitions.

Every kernel takes an optional ``ids`` table. When a kernel runs on a
supergraph, ``ids[i]`` is the identity of the vertex simulating supernode
``i``; it seeds the initial Linial coloring and keys the random streams, so
results do not depend on how supernodes happen to be numbered.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ._numeric import ceil_tol, next_prime
from .graph import Graph
from .sim import RoundLedger, SimConfig, randint_for

__all__ = [
    "UNTIL_FIXPOINT",
    "C_LIN",
    "C_UF",
    "Coloring",
    "UnionFreeFamily",
    "HPartition",
    "ColoringError",
    "build_union_free",
    "is_union_free",
    "linial_reduce",
    "linial_color",
    "random_color",
    "orient_parents",
    "arb_linial_color",
    "h_partition_random_color",
    "peel_h_partition",
    "effective_h_partition",
]

# t = UNTIL_FIXPOINT: keep reducing while the palette strictly shrinks
UNTIL_FIXPOINT = None

# hard stop for the Las Vegas loops; hitting it means a bug, not bad luck
MAX_TRIAL_ROUNDS = 10_000

# Fixpoint Linial palettes stay below C_LIN * Delta**2 (q < 4*Delta by
# Bertrand once d = 2 is affordable). Union-free ground sets stay below
# C_UF * (Delta+1)**2 * (1 + ln p) on the audited range p <= 32, Delta <= 4.
C_LIN = 16
C_UF = 8


class ColoringError(ValueError):
    """Misconfigured coloring kernel (family too small, bad partition...)."""


@dataclass(frozen=True)
class Coloring:
    colors: dict[int, int]
    palette: int

    def __post_init__(self):
        for v, c in self.colors.items():
            if not 1 <= c <= self.palette:
                raise ColoringError(f"color {c} of vertex {v} outside 1..{self.palette}")

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    @property
    def num_colors(self) -> int:
        return len(set(self.colors.values()))

    def conflicts(self, g: Graph) -> list[tuple[int, int]]:
        """Monochromatic edges plus uncolored vertices (as ``(v, v)``)."""
        bad = [(v, v) for v in g.vertices if v not in self.colors]
        for u, v in g.edges():
            cu = self.colors.get(u)
            if cu is not None and cu == self.colors.get(v):
                bad.append((u, v))
        return bad

    def is_proper(self, g: Graph) -> bool:
        return not self.conflicts(g)

    def to_dict(self) -> dict:
        return {"palette": self.palette, "colors": [[v, c] for v, c in sorted(self.colors.items())]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> Coloring:
        return cls({int(v): int(c) for v, c in data["colors"]}, int(data["palette"]))


# -- union-free families -------------------------------------------------------


class UnionFreeFamily:
    """``set_for(c)`` is the set assigned to color ``c`` (1-based); elements
    lie in ``1..ground_size``. Set ``c`` is the graph {(x, f(x))} of the
    ``c``-th polynomial of degree <= ``degree`` over F_q, encoded as
    ``x*q + f(x) + 1``. Sets are built on demand."""

    __slots__ = ("delta", "p", "q", "degree", "_cache")

    def __init__(self, delta: int, p: int, q: int, degree: int):
        self.delta = delta
        self.p = p
        self.q = q
        self.degree = degree
        self._cache: dict[int, frozenset[int]] = {}

    @property
    def ground_size(self) -> int:
        return self.q * self.q

    def set_for(self, color: int) -> frozenset[int]:
        if not 1 <= color <= self.p:
            raise ColoringError(f"color {color} outside 1..{self.p}")
        got = self._cache.get(color)
        if got is None:
            q = self.q
            coeffs = []
            x = color - 1
            for _ in range(self.degree + 1):
                coeffs.append(x % q)
                x //= q
            pts = []
            for xv in range(q):
                y = 0
                for c in reversed(coeffs):
                    y = (y * xv + c) % q
                pts.append(xv * q + y + 1)
            got = self._cache[color] = frozenset(pts)
        return got

    @property
    def sets(self) -> tuple[frozenset[int], ...]:
        return tuple(self.set_for(c) for c in range(1, self.p + 1))

    def __repr__(self) -> str:
        return f"UnionFreeFamily(delta={self.delta}, p={self.p}, ground_size={self.ground_size})"


def _field_params(p: int, delta: int) -> tuple[int, int]:
    """(q, d) minimizing q**2 subject to q prime, q > max(delta, 1)*d and
    q**(d+1) >= p. q > d keeps distinct polynomials distinct as functions."""
    best: tuple[int, int] | None = None
    d = 1
    while True:
        q = next_prime(max(delta, 1) * d)
        while q ** (d + 1) < p:
            q = next_prime(q)
        if best is None or q < best[0]:
            best = (q, d)
        # once delta*d alone exceeds the best q, larger d cannot help
        if max(delta, 1) * (d + 1) >= best[0] or 2 ** (d + 1) > p:
            return best
        d += 1


def build_union_free(p: int, delta: int) -> UnionFreeFamily:
    """A delta-union-free family of ``p`` sets.

    Two distinct polynomials of degree <= d agree on at most d points and
    every set has q points, so with q > delta*d no set is covered by delta
    others.
    """
    if delta < 0:
        raise ColoringError("delta must be >= 0")
    if p < delta + 1:
        raise ColoringError(f"family size p={p} must be at least delta+1={delta + 1}")
    q, d = _field_params(p, delta)
    return UnionFreeFamily(delta, p, q, d)


def is_union_free(sets: Sequence[frozenset[int]], delta: int) -> bool:
    """Exhaustive check: no set is covered by the union of ``delta`` others."""
    for i, target in enumerate(sets):
        if not target:
            return False
        if delta == 0:
            continue
        # only the traces of the other sets on ``target`` matter
        pos = {x: b for b, x in enumerate(sorted(target))}
        full = (1 << len(target)) - 1
        traces = set()
        for j, other in enumerate(sets):
            if j != i:
                traces.add(sum(1 << pos[x] for x in other & target))
        if full in traces:
            return False
        pool = sorted(traces - {0})
        for r in range(2, min(delta, len(sets) - 1) + 1):
            for combo in itertools.combinations(pool, r):
                acc = 0
                for m in combo:
                    acc |= m
                if acc == full:
                    return False
    return True


# -- Linial ----------------------------------------------------------------------


def _identity_ids(g: Graph, ids: Sequence[int] | None) -> Sequence[int]:
    if ids is None:
        return range(g.n + 1)
    if len(ids) != g.n + 1:
        raise ColoringError("ids must have one entry per vertex plus a placeholder at 0")
    return ids


def linial_reduce(
    g: Graph,
    phi: Coloring,
    family: UnionFreeFamily,
    parents: Sequence[Sequence[int]] | None = None,
) -> Coloring:
    """One reduction round: v takes the smallest element of its own set that
    no neighbor's set contains. With ``parents`` only parents are excluded,
    which is enough for properness when every edge has one endpoint as a
    parent of the other."""
    if family.p < phi.palette:
        raise ColoringError(f"family has {family.p} sets but the palette is {phi.palette}")
    excl = parents if parents is not None else [g.neighbors(v) if v else () for v in range(g.n + 1)]
    need = max((len(excl[v]) for v in g.vertices), default=0)
    if need > family.delta:
        raise ColoringError(f"degree {need} exceeds the family parameter {family.delta}")
    out = {}
    for v in g.vertices:
        blocked: set[int] = set()
        for u in excl[v]:
            blocked |= family.set_for(phi[u])
        free = family.set_for(phi[v]) - blocked
        if not free:
            raise ColoringError(f"no free color for vertex {v}; input coloring not proper?")
        out[v] = min(free)
    return Coloring(out, family.ground_size)


def _linial(
    g: Graph,
    t: int | None,
    ids: Sequence[int],
    id_space: int,
    parents: Sequence[Sequence[int]] | None,
    phase: str,
) -> tuple[Coloring, RoundLedger]:
    ledger = RoundLedger()
    if t is not None and t < 1:
        raise ColoringError("t must be >= 1 or UNTIL_FIXPOINT")
    excl_deg = (
        max((len(parents[v]) for v in g.vertices), default=0)
        if parents is not None
        else g.max_degree
    )
    if excl_deg == 0:
        return Coloring({v: 1 for v in g.vertices}, 1), ledger
    phi = Coloring({v: ids[v] for v in g.vertices}, id_space)
    rounds = 0
    while t is None or rounds < t:
        fam = build_union_free(max(phi.palette, excl_deg + 1), excl_deg)
        if t is None and fam.ground_size >= phi.palette:
            break
        phi = linial_reduce(g, phi, fam, parents)
        rounds += 1
    ledger.charge(phase, rounds)
    return phi, ledger


def linial_color(
    g: Graph,
    t: int | None = UNTIL_FIXPOINT,
    *,
    ids: Sequence[int] | None = None,
    id_space: int | None = None,
) -> tuple[Coloring, RoundLedger]:
    """Start from the ID coloring and apply ``t`` reduction rounds (or reduce
    until the palette stops shrinking)."""
    ids = _identity_ids(g, ids)
    space = id_space if id_space is not None else max(ids, default=1) or 1
    return _linial(g, t, ids, space, None, "linial")


# -- randomized trial coloring -------------------------------------------------


def random_color(
    g: Graph,
    epsilon: float,
    cfg: SimConfig,
    *,
    ids: Sequence[int] | None = None,
    degree_bound: int | None = None,
    n_palette: int | None = None,
    scope: str = "random-color",
) -> tuple[Coloring, RoundLedger]:
    """Every uncolored vertex draws from 1..ceil(Delta * n**eps) and keeps the
    draw if no neighbor drew or already owns it. Runs to completion."""
    if not 0 < epsilon <= 1:
        raise ColoringError("epsilon must be in (0, 1]")
    ids = _identity_ids(g, ids)
    delta = max(1, g.max_degree if degree_bound is None else degree_bound)
    if g.max_degree > delta:
        raise ColoringError(f"max degree {g.max_degree} exceeds degree_bound {delta}")
    n = g.n if n_palette is None else n_palette
    palette = ceil_tol(delta * max(n, 1) ** epsilon)
    colors, rounds = _trial_color(g, list(g.vertices), {}, palette, ids, cfg.seed, scope)
    ledger = RoundLedger().charge(scope, rounds)
    return Coloring(colors, palette), ledger


def _trial_color(
    g: Graph,
    todo: list[int],
    fixed: dict[int, int],
    palette: int,
    ids: Sequence[int],
    seed: int,
    scope: str,
) -> tuple[dict[int, int], int]:
    """Trial rounds for ``todo``; neighbors in ``fixed`` are permanent
    constraints, other already-uncolored vertices outside ``todo`` are ignored."""
    colors = dict(fixed)
    active = set(todo)
    rounds = 0
    while active:
        if rounds >= MAX_TRIAL_ROUNDS:
            raise RuntimeError(f"trial coloring did not finish in {MAX_TRIAL_ROUNDS} rounds")
        rounds += 1
        draw = {v: randint_for(seed, scope, ids[v], rounds, palette) for v in sorted(active)}
        won = []
        for v, c in draw.items():
            if all(draw.get(u) != c and colors.get(u) != c for u in g.neighbors(v)):
                won.append(v)
        for v in won:
            colors[v] = draw[v]
            active.discard(v)
    return colors, rounds


# -- H-partitions ------------------------------------------------------------------


@dataclass(frozen=True)
class HPartition:
    """Ordered bands; every v in band i has at most ``degree_bound``
    neighbors in bands i, i+1, ..."""

    bands: tuple[frozenset[int], ...]
    degree_bound: float

    @classmethod
    def of(cls, bands: Iterable[Iterable[int]], degree_bound: float) -> HPartition:
        return cls(tuple(frozenset(b) for b in bands), degree_bound)

    def band_index(self) -> dict[int, int]:
        out = {}
        for i, b in enumerate(self.bands, start=1):
            for v in b:
                if v in out:
                    raise ColoringError(f"vertex {v} is in bands {out[v]} and {i}")
                out[v] = i
        return out

    @property
    def ground(self) -> frozenset[int]:
        return frozenset().union(*self.bands) if self.bands else frozenset()

    def forward_degrees(self, g: Graph) -> dict[int, int]:
        idx = self.band_index()
        return {v: sum(1 for u in g.neighbors(v) if idx.get(u, 0) >= i) for v, i in idx.items()}

    def max_forward_degree(self, g: Graph) -> int:
        return max(self.forward_degrees(g).values(), default=0)

    def check(self, g: Graph) -> None:
        idx = self.band_index()
        if set(idx) != set(g.vertices):
            raise ColoringError("bands do not cover exactly the vertex set")
        worst = self.max_forward_degree(g)
        if worst > self.degree_bound:
            raise ColoringError(f"forward degree {worst} exceeds bound {self.degree_bound}")


def effective_h_partition(g: Graph, h: HPartition) -> HPartition:
    """Same bands, bound raised to the realized forward degree if needed."""
    return HPartition(h.bands, max(h.degree_bound, h.max_forward_degree(g)))


def orient_parents(g: Graph, h: HPartition, ids: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Orient every edge toward the later band, or toward the larger ID inside
    a band; a vertex's parents are its out-neighbors."""
    h.check(g)
    ids = _identity_ids(g, ids)
    idx = h.band_index()
    key = {v: (idx[v], ids[v]) for v in g.vertices}
    parents: list[tuple[int, ...]] = [()]
    for v in g.vertices:
        parents.append(tuple(u for u in g.neighbors(v) if key[u] > key[v]))
    return parents


def arb_linial_color(
    g: Graph,
    h: HPartition,
    t: int | None = UNTIL_FIXPOINT,
    *,
    ids: Sequence[int] | None = None,
    id_space: int | None = None,
) -> tuple[Coloring, RoundLedger]:
    """Linial reduction where each vertex only avoids its parents' sets."""
    parents = orient_parents(g, h, ids)
    ids = _identity_ids(g, ids)
    space = id_space if id_space is not None else max(ids, default=1) or 1
    return _linial(g, t, ids, space, parents, "arb-linial")


def h_partition_random_color(
    g: Graph,
    h: HPartition,
    epsilon: float,
    cfg: SimConfig,
    *,
    ids: Sequence[int] | None = None,
    n_palette: int | None = None,
    scope: str = "h-random",
) -> tuple[Coloring, RoundLedger]:
    """Trial coloring band by band, last band first. A vertex competes with
    same-band neighbors and must avoid colors fixed in later bands; at most
    ``A`` constraints, hence palette ceil(A * n**eps)."""
    if not 0 < epsilon <= 1:
        raise ColoringError("epsilon must be in (0, 1]")
    h.check(g)
    ids = _identity_ids(g, ids)
    n = g.n if n_palette is None else n_palette
    palette = ceil_tol(max(1.0, h.degree_bound) * max(n, 1) ** epsilon)
    colors: dict[int, int] = {}
    ledger = RoundLedger()
    for i in range(len(h.bands), 0, -1):
        band = sorted(h.bands[i - 1])
        if not band:
            continue
        colors, rounds = _trial_color(g, band, colors, palette, ids, cfg.seed, f"{scope}/band{i}")
        ledger.charge(f"{scope}/band{i}", rounds)
    return Coloring(colors, palette), ledger


def peel_h_partition(g: Graph, arboricity_bound: float, epsilon: float) -> HPartition:
    """Repeatedly strip every vertex of remaining degree <= (2+eps)*a."""
    if arboricity_bound < 1:
        raise ColoringError("arboricity bound must be >= 1")
    if epsilon <= 0:
        raise ColoringError("epsilon must be > 0")
    thr = (2 + epsilon) * arboricity_bound
    deg = {v: g.degree(v) for v in g.vertices}
    bands = []
    while deg:
        band = [v for v in deg if deg[v] <= thr]
        if not band:
            raise ColoringError(
                f"peeling stalled with {len(deg)} vertices left: arboricity exceeds {arboricity_bound}"
            )
        for v in band:
            del deg[v]
        for v in band:
            for u in g.neighbors(v):
                if u in deg:
                    deg[u] -= 1
        bands.append(frozenset(band))
    return HPartition(tuple(bands), thr)
