"""``netdecomp`` command line.

Exit codes: 0 success, 1 an output failed validation, 2 usage or input
error. ``NETDECOMP_SEED`` sets the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .applications import (
    OversizeError,
    PreconditionError,
    approx_min_coloring,
    approx_mds,
    approx_t_spanner,
    color_high_girth,
    color_triangle_free,
)
from .coloring import ColoringError
from .decompose import VARIANTS, DecompositionError, NetworkDecomposition, decompose
from .experiment import ExperimentSpec, SpecError, make_graph, run_experiment
from .generators import GENERATORS
from .graph import GraphError, format_graph, read_graph
from .oracles import OracleCapError, brute_chromatic, brute_mds, brute_min_t_spanner, validate_decomposition
from .separated import RULING_METHODS, low_intersecting, rs_decompose, sep_decompose, weak_sep_decompose
from .sim import SimConfig

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_seed() -> int:
    raw = os.environ.get("NETDECOMP_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        print(f"NETDECOMP_SEED must be an integer, got {raw!r}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE) from None


def _t_arg(text: str):
    if text in ("fixpoint", "inf", "none"):
        return None
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("t must be a positive integer or 'fixpoint'") from None
    if v < 1:
        raise argparse.ArgumentTypeError("t must be >= 1")
    return v


def _emit(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2, default=str)
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cfg(a) -> SimConfig:
    return SimConfig(seed=a.seed, c_threshold=a.c_threshold, c_degree=a.c_degree, gamma_mode=a.gamma_mode)


def _decomp_doc(g, nd, ledger) -> tuple[dict, int]:
    rep = validate_decomposition(g, nd)
    doc = nd.to_dict()
    doc["ledger"] = ledger.to_dict()
    doc["validation"] = rep.to_dict()
    return doc, EXIT_OK if rep.passed else EXIT_INVALID


# -- subcommands ---------------------------------------------------------------------


def cmd_generate(a) -> int:
    params = {}
    for item in a.param or []:
        key, _, val = item.partition("=")
        if not key or not val:
            raise SpecError(f"bad --param {item!r}; use key=value")
        params[key] = float(val) if key == "p" else int(val)
    spec = ExperimentSpec(a.kind, params, "decompose", seeds=[a.seed])
    g = make_graph(spec.generator, spec.params, a.seed)
    text = format_graph(g)
    if a.out and a.out != "-":
        with open(a.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_decompose(a) -> int:
    g = read_graph(a.graph)
    nd, _, led = decompose(g, a.k, a.epsilon, a.t, a.variant, _cfg(a))
    doc, code = _decomp_doc(g, nd, led)
    _emit(doc, a.out)
    return code


def cmd_rs_decompose(a) -> int:
    g = read_graph(a.graph)
    nd, _, led = rs_decompose(g, a.k, a.method, _cfg(a))
    doc, code = _decomp_doc(g, nd, led)
    _emit(doc, a.out)
    return code


def cmd_sep_decompose(a) -> int:
    g = read_graph(a.graph)
    fn = weak_sep_decompose if a.weak else sep_decompose
    nd, _, led = fn(g, a.k, a.sigma, _cfg(a), epsilon=a.epsilon)
    doc, code = _decomp_doc(g, nd, led)
    _emit(doc, a.out)
    return code


def cmd_low_intersect(a) -> int:
    g = read_graph(a.graph)
    lip, led = low_intersecting(g, a.k, a.gamma, _cfg(a), epsilon=a.epsilon)
    doc = lip.decomposition.to_dict()
    doc.update(alpha=lip.alpha, beta=lip.beta, gamma=lip.gamma, ledger=led.to_dict(), validation=lip.report.to_dict())
    _emit(doc, a.out)
    return EXIT_OK if lip.report.passed else EXIT_INVALID


def _result_doc(res, oracle=None) -> dict:
    doc = res.to_dict()
    if oracle is not None:
        doc["oracleOptimum"] = oracle
    return doc


def cmd_color(a) -> int:
    g = read_graph(a.graph)
    res = approx_min_coloring(g, a.k, _cfg(a))
    _emit(_result_doc(res, brute_chromatic(g)[0] if a.oracle else None), a.json)
    return EXIT_OK


def cmd_color_tf(a) -> int:
    g = read_graph(a.graph)
    res = color_triangle_free(g, a.epsilon, _cfg(a))
    _emit(_result_doc(res), a.json)
    return EXIT_OK


def cmd_color_girth(a) -> int:
    g = read_graph(a.graph)
    res = color_high_girth(g, a.girth, a.epsilon, _cfg(a))
    _emit(_result_doc(res), a.json)
    return EXIT_OK


def cmd_mds(a) -> int:
    g = read_graph(a.graph)
    res = approx_mds(g, a.k, a.solver, a.pipeline, _cfg(a))
    _emit(_result_doc(res, brute_mds(g)[0] if a.oracle else None), a.json)
    return EXIT_OK


def cmd_spanner(a) -> int:
    g = read_graph(a.graph)
    res = approx_t_spanner(g, a.t, a.k, _cfg(a))
    _emit(_result_doc(res, brute_min_t_spanner(g, a.t)[0] if a.oracle else None), a.json)
    return EXIT_OK


def cmd_verify(a) -> int:
    g = read_graph(a.graph)
    with open(a.decomposition, encoding="utf-8") as fh:
        nd = NetworkDecomposition.from_dict(json.load(fh))
    rep = validate_decomposition(g, nd, a.mode)
    _emit(rep.to_dict(), a.out)
    return EXIT_OK if rep.passed else EXIT_INVALID


def cmd_experiment(a) -> int:
    with open(a.spec, encoding="utf-8") as fh:
        data = json.load(fh)
    if a.csv:
        data["csv_path"] = a.csv
    if a.json:
        data["json_path"] = a.json
    if a.full:
        data["full"] = True
    spec = ExperimentSpec.from_dict(data)
    doc = run_experiment(spec)
    if not spec.csv_path:
        sys.stdout.write(doc["csv"])
    ok = all(r["valid"] in (True, "") for r in doc["rows"])
    return EXIT_OK if ok else EXIT_INVALID


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="netdecomp", description="Network decomposition simulator and applications.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    seed = _default_seed()

    def common(sp, graph=True, k=True):
        if graph:
            sp.add_argument("--graph", required=True, help="graph file: 'n m' header then 'u v' lines")
        if k:
            sp.add_argument("--k", type=int, default=2)
        sp.add_argument("--seed", type=int, default=seed)
        sp.add_argument("--c-threshold", type=float, default=2.0)
        sp.add_argument("--c-degree", type=float, default=4.0)
        sp.add_argument("--gamma-mode", choices=("exact", "asymptotic"), default="exact")

    sp = sub.add_parser("generate", help="write a generated graph")
    sp.add_argument("kind", choices=sorted(GENERATORS))
    sp.add_argument("--param", action="append", help="generator parameter key=value (repeatable)")
    sp.add_argument("--seed", type=int, default=seed)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_generate)

    sp = sub.add_parser("decompose", help="randomized strong decomposition")
    common(sp)
    sp.add_argument("--epsilon", type=float, default=0.5)
    sp.add_argument("--t", type=_t_arg, default=None)
    sp.add_argument("--variant", choices=VARIANTS, default="threshold")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_decompose)

    sp = sub.add_parser("rs-decompose", help="ruling-set based decomposition")
    common(sp)
    sp.add_argument("--method", choices=RULING_METHODS, default="aglp-deterministic")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_rs_decompose)

    sp = sub.add_parser("sep-decompose", help="sigma-separated decomposition")
    common(sp)
    sp.add_argument("--sigma", type=int, default=3)
    sp.add_argument("--epsilon", type=float, default=0.5)
    sp.add_argument("--weak", action="store_true", help="weak-diameter variant on the power graph")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_sep_decompose)

    sp = sub.add_parser("low-intersect", help="low-intersecting partition")
    common(sp)
    sp.add_argument("--gamma", type=int, default=1)
    sp.add_argument("--epsilon", type=float, default=0.5)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_low_intersect)

    sp = sub.add_parser("color", help="approximate minimum coloring")
    common(sp)
    sp.add_argument("--oracle", action="store_true", help="also report the exact chromatic number")
    sp.add_argument("--json")
    sp.set_defaults(fn=cmd_color)

    sp = sub.add_parser("color-tf", help="coloring of triangle-free graphs")
    common(sp, k=False)
    sp.add_argument("--epsilon", type=float, default=0.5)
    sp.add_argument("--json")
    sp.set_defaults(fn=cmd_color_tf)

    sp = sub.add_parser("color-girth", help="coloring of high-girth graphs")
    common(sp, k=False)
    sp.add_argument("--girth", type=int, default=4, help="girth must exceed this even number")
    sp.add_argument("--epsilon", type=float, default=0.5)
    sp.add_argument("--json")
    sp.set_defaults(fn=cmd_color_girth)

    sp = sub.add_parser("mds", help="approximate minimum dominating set")
    common(sp)
    sp.add_argument("--solver", choices=("exact", "greedy"), default="exact")
    sp.add_argument("--pipeline", choices=("rand", "det", "randomized", "deterministic"), default="rand")
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--json")
    sp.set_defaults(fn=cmd_mds)

    sp = sub.add_parser("spanner", help="approximate minimum t-spanner")
    common(sp)
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--json")
    sp.set_defaults(fn=cmd_spanner)

    sp = sub.add_parser("verify", help="validate a decomposition file")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--decomposition", required=True)
    sp.add_argument("--mode", choices=("strong", "weak"))
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("experiment", help="run a JSON experiment spec")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--csv")
    sp.add_argument("--json")
    sp.add_argument("--full", action="store_true", help="include full payloads in the JSON")
    sp.set_defaults(fn=cmd_experiment)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (
        GraphError, DecompositionError, ColoringError, SpecError, PreconditionError,
        OversizeError, OracleCapError, OSError, ValueError, KeyError,
    ) as exc:
        print(f"netdecomp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
