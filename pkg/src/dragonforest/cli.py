"""Command-line interface: arboricity, bounded forest decompositions, thin trees, verification."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .density import ParameterError, chi, component_bound, fractional_arboricity
from .engine import run
from .graph import (Decomposition, GraphError, GraphFormatError, MultiGraph, OrientedTree,
                    non_spanning_components, parse_graph_text, red_components, validate)
from .packing import InsufficientForestsError, max_forest_packing
from .planar import THIN_BOUND, ConnectivityError, EmbeddedGraph, EmbeddingError, thin_tree

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_PRECONDITION, EXIT_STUCK = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _read_graph(path: str) -> tuple[MultiGraph, Optional[list[list[int]]]]:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_graph_text(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from None
    except GraphFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)


# --- arboricity ----------------------------------------------------------------

def cmd_arboricity(args: argparse.Namespace) -> int:
    g, _ = _read_graph(args.graph)
    gamma = fractional_arboricity(g)
    print(f"gamma={_fmt(gamma)} arboricity={math.ceil(gamma)}")
    return EXIT_OK


# --- sndt ------------------------------------------------------------------------

def decompose(g: MultiGraph, k: int, bound: int) -> tuple[dict, bool]:
    """Run the engine on every connected piece and merge; returns (json, stuck)."""
    blue: list[set[int]] = [set() for _ in range(k)]
    red: set[int] = set()
    root = 0
    for piece in g.components():
        if len(piece) < 2:
            continue
        sub, vmap, emap = g.induced(piece)
        res = run(sub, k, bound)
        if not res.ok:
            cert = res.certificate.to_json()
            cert["vertices"] = sorted(vmap[v] for v in cert["vertices"])
            return {"certificate": cert, "d": bound, "k": k}, True
        if piece[0] == 0:
            root = vmap[res.decomposition.root]
        for i, t in enumerate(res.decomposition.blue):
            blue[i].update(emap[e] for e in t.edge_ids())
        red.update(emap[e] for e in res.decomposition.red)
    trees = tuple(OrientedTree.from_edges(g, blue[i], root) for i in range(k))
    dec = Decomposition(g, trees, frozenset(red))
    return decomposition_json(dec, k, bound), False


def decomposition_json(dec: Decomposition, k: int, d: int) -> dict:
    return {
        "k": k,
        "d": d,
        "root": dec.blue[0].root if dec.blue else 0,
        "blue": [sorted(t.edge_ids()) for t in dec.blue],
        "red": sorted(dec.red),
        "orientations": sorted([v, p, e] for t in dec.blue for v, p, e in t.directed_edges()),
        "max_red_component_edges": max((c.edge_count for c in red_components(dec)), default=0),
        "non_spanning": non_spanning_components(dec),
        "certificate": None,
    }


def cmd_sndt(args: argparse.Namespace) -> int:
    k, d = args.k, args.d
    try:
        bound = component_bound(k, d)
        limit = k + chi(k, bound)
    except ParameterError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    g, _ = _read_graph(args.graph)
    gamma = fractional_arboricity(g)
    if gamma > limit:
        raise CliError(f"density check failed: gamma={_fmt(gamma)} exceeds k+chi={_fmt(limit)}",
                       EXIT_PRECONDITION)
    try:
        out, stuck = decompose(g, k, bound)
    except InsufficientForestsError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    if stuck:
        print(_dump(out))
        return EXIT_STUCK
    problem = check_decomposition(g, out)
    if problem:
        raise CliError(f"internal error, output failed verification: {problem}", EXIT_VERIFY)
    print(_dump(out))
    return EXIT_OK


# --- verify ----------------------------------------------------------------------

def _check_spanning(g: MultiGraph, trees: list[OrientedTree], k: int, flagged) -> Optional[str]:
    """Blue classes span every connected component except flagged ones, which must be non-packable."""
    flagged = set(flagged)
    for comp in g.components():
        if len(comp) < 2:
            continue
        members = set(comp)
        if comp[0] in flagged:
            sub, _, _ = g.induced(comp)
            if max_forest_packing(sub, k).size >= k * (len(comp) - 1):
                return f"component {comp[0]} is flagged non-spanning but packs {k} spanning trees"
            continue
        for i, t in enumerate(trees):
            inside = sum(1 for v in comp if t.parent[v] >= 0 and t.parent[v] in members)
            if inside != len(comp) - 1:
                return f"blue class {i} does not span component {comp[0]}"
    return None


def check_decomposition(g: MultiGraph, data: dict) -> Optional[str]:
    """First violated claim of a decomposition JSON, or None."""
    required = ("k", "d", "root", "blue", "red", "orientations", "max_red_component_edges", "certificate")
    missing = [key for key in required if key not in data]
    if missing:
        return f"missing keys {missing}"
    if data["certificate"] is not None:
        return "document is a stuck certificate, not a decomposition"
    k, d = data["k"], data["d"]
    if not isinstance(k, int) or len(data["blue"]) != k:
        return "blue class count differs from k"
    parent = [[-1] * g.n for _ in range(k)]
    pedge = [[-1] * g.n for _ in range(k)]
    owner = {e: i for i, cls in enumerate(data["blue"]) for e in cls}
    for entry in data["orientations"]:
        v, p, e = entry
        if e not in owner:
            return f"orientation for non-blue edge {e}"
        if not 0 <= e < g.m or set(g.edges[e]) != {v, p}:
            return f"orientation {entry} does not match edge endpoints"
        i = owner[e]
        if parent[i][v] >= 0:
            return f"vertex {v} has two parents in blue class {i}"
        parent[i][v], pedge[i][v] = p, e
    root = data["root"]
    trees = []
    for i in range(k):
        if sorted(e for e in pedge[i] if e >= 0) != sorted(data["blue"][i]):
            return f"blue class {i} is not fully oriented"
        trees.append(OrientedTree(root, tuple(parent[i]), tuple(pedge[i])))
    try:
        dec = Decomposition(g, tuple(trees), frozenset(data["red"]))
    except (TypeError, GraphError) as exc:
        return str(exc)
    if len(data["red"]) != len(set(data["red"])):
        return "not a partition"
    report = validate(dec, require_spanning=False, bound=d)
    if not report:
        return f"{report.reason} {list(report.witness)}"
    for i, t in enumerate(trees):
        if t.parent[root] >= 0:
            return f"root {root} has a parent in blue class {i}"
    problem = _check_spanning(g, trees, k, data.get("non_spanning", []))
    if problem:
        return problem
    actual = max((c.edge_count for c in red_components(dec)), default=0)
    if actual != data["max_red_component_edges"]:
        return f"claimed max red component {data['max_red_component_edges']} but found {actual}"
    return None


def cmd_verify(args: argparse.Namespace) -> int:
    g, _ = _read_graph(args.graph)
    try:
        with open(args.decomposition, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {args.decomposition}: {exc}", EXIT_PARSE) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{args.decomposition}: invalid JSON: {exc}", EXIT_PARSE) from None
    try:
        problem = check_decomposition(g, data)
    except (TypeError, ValueError, IndexError, KeyError) as exc:
        problem = f"malformed decomposition: {exc!r}"
    if problem:
        print(f"FAIL: {problem}")
        return EXIT_VERIFY
    print("PASS")
    return EXIT_OK


# --- thintree --------------------------------------------------------------------

def _mode(text: str) -> str:
    if text == "exhaustive":
        return text
    if text.startswith("sampled:") and text[8:].isdigit() and int(text[8:]) > 0:
        return text
    raise argparse.ArgumentTypeError("expected 'exhaustive' or 'sampled:N'")


def cmd_thintree(args: argparse.Namespace) -> int:
    g, rotation = _read_graph(args.graph)
    if rotation is None:
        raise CliError("thintree needs a 'rotations' section", EXIT_PARSE)
    try:
        eg = EmbeddedGraph.from_lists(g, rotation)
    except EmbeddingError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    try:
        cert = thin_tree(eg, args.verify)
    except (ConnectivityError, EmbeddingError, GraphError, ValueError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    print(_dump(cert.to_json()))
    return EXIT_OK if cert.max_ratio <= THIN_BOUND else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dragonforest", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("arboricity", help="exact fractional arboricity and arboricity")
    p.add_argument("graph")
    p.set_defaults(func=cmd_arboricity)

    p = sub.add_parser("sndt", help="k forests plus one forest with bounded components")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_sndt)

    p = sub.add_parser("thintree", help="5/6-thin spanning tree of an embedded planar graph")
    p.add_argument("graph")
    p.add_argument("--verify", type=_mode, default="exhaustive", help="exhaustive or sampled:N")
    p.set_defaults(func=cmd_thintree)

    p = sub.add_parser("verify", help="check a decomposition JSON against a graph")
    p.add_argument("graph")
    p.add_argument("decomposition")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
