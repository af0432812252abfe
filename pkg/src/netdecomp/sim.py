"""Synchronous round accounting and reproducible per-vertex randomness.

Algorithms run vertex-centric on whatever (super)graph they are handed. A
round executed on a level-i supergraph is charged ``Diam_i + 1`` base-graph
rounds, where ``Diam_i`` bounds the strong diameter of that level's
supernodes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

__all__ = ["SimConfig", "LedgerEntry", "RoundLedger", "rng_for", "uniform_for", "randint_for"]

_GAMMA_MODES = ("exact", "asymptotic")


@dataclass(frozen=True)
class SimConfig:
    """Run-wide knobs.

    c_threshold: recursion stops once a supergraph has at most
        ``c_threshold * n**(1/k) * ln n`` supernodes.
    c_degree: constant in the whp degree bound ``c_degree * q * ln n`` for
        vertices left on the low-degree side of a partition.
    gamma_mode: ``"exact"`` offsets each recursion level by the palette it
        actually used; ``"asymptotic"`` uses one fixed stride per level.
    """

    seed: int = 0
    c_threshold: float = 2.0
    c_degree: float = 4.0
    gamma_mode: str = "exact"

    def __post_init__(self):
        if self.c_threshold < 1:
            raise ValueError("c_threshold must be >= 1")
        if self.c_degree < 1:
            raise ValueError("c_degree must be >= 1")
        if self.gamma_mode not in _GAMMA_MODES:
            raise ValueError(f"gamma_mode must be one of {_GAMMA_MODES}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class LedgerEntry:
    phase: str
    base: int
    multiplier: int
    charged: int


@dataclass
class RoundLedger:
    entries: list[LedgerEntry] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(e.charged for e in self.entries)

    def charge(self, phase: str, base: int, multiplier: int = 1) -> RoundLedger:
        if base < 0:
            raise ValueError("base rounds must be >= 0")
        if multiplier < 1:
            raise ValueError("multiplier must be >= 1")
        self.entries.append(LedgerEntry(phase, int(base), int(multiplier), int(base) * int(multiplier)))
        return self

    def absorb(self, other: RoundLedger, multiplier: int = 1, prefix: str = "") -> RoundLedger:
        """Append ``other``'s entries, scaling every multiplier (used when a
        sub-algorithm runs on a supergraph)."""
        for e in other.entries:
            self.charge(prefix + e.phase, e.base, e.multiplier * multiplier)
        return self

    def to_dict(self) -> dict:
        return {
            "entries": [
                {"phase": e.phase, "base": e.base, "multiplier": e.multiplier, "charged": e.charged}
                for e in self.entries
            ],
            "total": self.total,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> RoundLedger:
        led = cls()
        for e in data["entries"]:
            led.charge(e["phase"], e["base"], e["multiplier"])
            if led.entries[-1].charged != e["charged"]:
                raise ValueError(f"entry {e['phase']!r}: charged != base * multiplier")
        if led.total != data["total"]:
            raise ValueError("ledger total does not match its entries")
        return led


def _key(seed: int, scope: str, vertex: int, rnd: int) -> int:
    h = hashlib.blake2b(digest_size=16)
    h.update(int(seed).to_bytes(8, "little", signed=False))
    h.update(scope.encode("utf-8"))
    h.update(b"\x00")
    h.update(int(vertex).to_bytes(8, "little", signed=True))
    h.update(int(rnd).to_bytes(8, "little", signed=True))
    return int.from_bytes(h.digest(), "little")


def rng_for(seed: int, scope: str, vertex: int, round: int) -> np.random.Generator:
    """Random stream that is a pure function of its four arguments.

    Counter-based (Philox keyed by a hash of the arguments), so evaluating
    vertices in any order cannot change any result.
    """
    return np.random.Generator(np.random.Philox(key=_key(seed, scope, vertex, round)))


def uniform_for(seed: int, scope: str, vertex: int, round: int) -> float:
    """The first uniform draw of ``rng_for(...)`` without building a Generator.

    Cheap path for the many one-shot coin flips; not bit-identical to
    ``rng_for(...).random()`` but equally a pure function of the arguments.
    """
    return (_key(seed, scope, vertex, round) >> 75) / float(1 << 53)


def randint_for(seed: int, scope: str, vertex: int, round: int, high: int) -> int:
    """Uniform integer in ``1..high`` keyed like ``uniform_for``."""
    if high < 1:
        raise ValueError("high must be >= 1")
    return _key(seed, scope, vertex, round) % high + 1
