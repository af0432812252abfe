"""Small numeric helpers shared by the algorithm modules."""

from __future__ import annotations

import math

_TOL = 1e-9


def ceil_tol(x: float) -> int:
    """Ceiling that ignores float noise, so ``ceil_tol(8 ** (1/3)) == 2``."""
    r = round(x)
    if abs(x - r) <= _TOL * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


def floor_tol(x: float) -> int:
    r = round(x)
    if abs(x - r) <= _TOL * max(1.0, abs(x)):
        return int(r)
    return math.floor(x)


def root(n: int, k: int) -> float:
    """n ** (1/k) as a real number."""
    return float(n) ** (1.0 / k)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def next_prime(x: int) -> int:
    """Smallest prime strictly greater than ``x``."""
    q = max(2, x + 1)
    while not is_prime(q):
        q += 1
    return q


def harmonic(m: int) -> float:
    return math.fsum(1.0 / j for j in range(1, m + 1))
