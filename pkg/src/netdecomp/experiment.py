"""Seeded experiment runner: generate, run, validate, emit metrics.

CSV columns are fixed (``COLUMNS``). Wall-clock time is stored only in the
JSON output, so re-running a spec reproduces the CSV byte for byte.
"""

from __future__ import annotations

import csv
import inspect
import io
import json
import time
from dataclasses import asdict, dataclass, field

from ._numeric import is_prime
from .applications import (
    approx_min_coloring,
    approx_mds,
    approx_t_spanner,
    color_high_girth,
    color_triangle_free,
)
from .decompose import decompose
from .generators import GENERATORS
from .graph import Graph
from .oracles import (
    MDS_CAP,
    SPANNER_EDGE_CAP,
    brute_chromatic,
    brute_mds,
    brute_min_t_spanner,
    validate_decomposition,
)
from .separated import low_intersecting, rs_decompose, sep_decompose, weak_sep_decompose
from .sim import SimConfig

__all__ = ["COLUMNS", "ALGORITHMS", "SpecError", "ExperimentSpec", "run_experiment", "make_graph"]

COLUMNS = (
    "generator",
    "seed",
    "n",
    "m",
    "algorithm",
    "k",
    "epsilon",
    "sigma",
    "label_count",
    "max_cluster_diam",
    "rounds",
    "valid",
    "value",
    "oracle",
    "ratio",
)

ALGORITHMS = (
    "decompose",
    "rs-decompose",
    "sep-decompose",
    "weak-sep-decompose",
    "low-intersect",
    "color",
    "color-tf",
    "color-girth",
    "mds",
    "spanner",
)

_SEEDED = {"gnp", "random-tree", "random-bipartite"}


class SpecError(ValueError):
    pass


@dataclass
class ExperimentSpec:
    generator: str
    params: dict
    algorithm: str
    algo_params: dict = field(default_factory=dict)
    seeds: list[int] = field(default_factory=lambda: [0])
    csv_path: str | None = None
    json_path: str | None = None
    full: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.generator not in GENERATORS:
            raise SpecError(f"unknown generator {self.generator!r}; choose from {sorted(GENERATORS)}")
        fn = GENERATORS[self.generator]
        allowed = set(inspect.signature(fn).parameters) - {"seed"}
        extra = set(self.params) - allowed
        if extra:
            raise SpecError(f"{self.generator} does not take {sorted(extra)}")
        missing = {
            name for name, p in inspect.signature(fn).parameters.items()
            if p.default is inspect.Parameter.empty and name not in self.params
        }
        if missing:
            raise SpecError(f"{self.generator} needs {sorted(missing)}")
        for key, val in self.params.items():
            if key == "p":
                if not (isinstance(val, (int, float)) and 0 <= val <= 1):
                    raise SpecError("p must lie in [0, 1]")
            elif not (isinstance(val, int) and val >= 0):
                raise SpecError(f"{key} must be a non-negative integer")
        if self.generator == "girth6" and not is_prime(self.params["q"]):
            raise SpecError(f"girth6 needs a prime q, got {self.params['q']}")
        if self.generator == "cycle" and self.params["n"] < 3:
            raise SpecError("cycle needs n >= 3")
        if self.algorithm not in ALGORITHMS:
            raise SpecError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        if not self.seeds or any(not (isinstance(s, int) and 0 <= s < 2**64) for s in self.seeds):
            raise SpecError("seeds must be a nonempty list of 64-bit non-negative integers")

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentSpec:
        known = {f for f in cls.__dataclass_fields__}
        bad = set(data) - known
        if bad:
            raise SpecError(f"unknown spec fields {sorted(bad)}")
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)


def make_graph(generator: str, params: dict, seed: int) -> Graph:
    fn = GENERATORS[generator]
    if generator in _SEEDED:
        return fn(**params, seed=seed)
    return fn(**params)


def _num(x) -> str:
    if x is None or x == "":
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return repr(round(x, 6))
    return str(x)


def _run_one(spec: ExperimentSpec, seed: int) -> tuple[dict, dict]:
    g = make_graph(spec.generator, spec.params, seed)
    ap = dict(spec.algo_params)
    cfg = SimConfig(seed=seed, **{k: ap.pop(k) for k in list(ap) if k in ("c_threshold", "c_degree", "gamma_mode")})
    k = ap.get("k", 2)
    eps = ap.get("epsilon", 0.5)
    row = {c: "" for c in COLUMNS}
    row.update(generator=spec.generator, seed=seed, n=g.n, m=g.m, algorithm=spec.algorithm)
    payload: dict = {}
    alg = spec.algorithm
    if alg in ("decompose", "rs-decompose", "sep-decompose", "weak-sep-decompose", "low-intersect"):
        sigma = ap.get("sigma", 2)
        if alg == "decompose":
            nd, _, led = decompose(g, k, eps, ap.get("t"), ap.get("variant", "threshold"), cfg)
        elif alg == "rs-decompose":
            nd, _, led = rs_decompose(g, k, ap.get("method", "aglp-deterministic"), cfg)
        elif alg == "sep-decompose":
            sigma = ap.get("sigma", 3)
            nd, _, led = sep_decompose(g, k, sigma, cfg, epsilon=eps)
        elif alg == "weak-sep-decompose":
            sigma = ap.get("sigma", 3)
            nd, _, led = weak_sep_decompose(g, k, sigma, cfg, epsilon=eps)
        else:
            lip, led = low_intersecting(g, k, ap.get("gamma", 1), cfg, epsilon=eps)
            nd = lip.decomposition
            sigma = nd.sigma
        rep = validate_decomposition(g, nd)
        row.update(
            k=k, epsilon=eps, sigma=nd.sigma, label_count=nd.label_count,
            max_cluster_diam=rep.extra.get("max_diameter", ""), rounds=led.total, valid=rep.passed,
            value=nd.label_count,
        )
        payload["decomposition"] = nd.to_dict()
    elif alg == "color":
        res = approx_min_coloring(g, k, cfg)
        row.update(k=k, label_count=res.decomposition.label_count, rounds=res.ledger.total, valid=True,
                   value=res.value.num_colors)
        if g.n <= 16:  # keeps the chromatic oracle quick
            row["oracle"] = brute_chromatic(g)[0]
    elif alg == "color-tf":
        res = color_triangle_free(g, eps, cfg)
        row.update(k=2, epsilon=eps, rounds=res.ledger.total, valid=True, value=res.value.num_colors)
    elif alg == "color-girth":
        res = color_high_girth(g, ap.get("girth", 4), eps, cfg)
        row.update(epsilon=eps, rounds=res.ledger.total, valid=True, value=res.value.num_colors)
    elif alg == "mds":
        res = approx_mds(g, k, ap.get("solver", "exact"), ap.get("pipeline", "randomized"), cfg)
        row.update(k=k, sigma=3, label_count=res.decomposition.label_count, rounds=res.ledger.total,
                   valid=True, value=len(res.value))
        if g.n <= min(MDS_CAP, 18):
            row["oracle"] = brute_mds(g)[0]
    else:
        t = ap.get("t", 2)
        res = approx_t_spanner(g, t, k, cfg)
        row.update(k=k, sigma=2 * t - 1, label_count=res.decomposition.label_count, rounds=res.ledger.total,
                   valid=True, value=res.extra["total"])
        if g.m <= SPANNER_EDGE_CAP:
            row["oracle"] = brute_min_t_spanner(g, t)[0]
    if alg in ("color", "color-tf", "color-girth", "mds", "spanner"):
        payload["result"] = res.to_dict()
    if row["oracle"] not in ("", 0):
        row["ratio"] = row["value"] / row["oracle"]
    return row, payload


def run_experiment(spec: ExperimentSpec) -> dict:
    """Run every seed and write CSV/JSON when paths are set. Returns the
    JSON document."""
    spec.validate()
    rows = []
    for seed in spec.seeds:
        t0 = time.perf_counter()
        row, payload = _run_one(spec, seed)
        rows.append((row, time.perf_counter() - t0, payload))
    rows.sort(key=lambda r: (r[0]["generator"], r[0]["seed"]))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row, _, _ in rows:
        w.writerow([_num(row[c]) for c in COLUMNS])
    doc = {
        "spec": spec.to_dict(),
        "columns": list(COLUMNS),
        "rows": [{**{c: row[c] for c in COLUMNS}, "wall_time": wt} for row, wt, _ in rows],
    }
    if spec.full:
        doc["payloads"] = [p for _, _, p in rows]
    if spec.csv_path:
        with open(spec.csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    if spec.json_path:
        with open(spec.json_path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, default=str)
    doc["csv"] = buf.getvalue()
    return doc
