"""Embedded planar graphs: faces, duals, connectivity, and thin spanning trees."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .density import fractional_arboricity
from .engine import run
from .flow import FlowNetwork
from .graph import Decomposition, DisconnectedInputError, GraphError, MultiGraph, validate

THIN_BOUND = Fraction(5, 6)
GIRTH5_DENSITY = Fraction(5, 3)
EXHAUSTIVE_LIMIT = 24


class EmbeddingError(GraphError):
    pass


class GirthTooSmallError(GraphError):
    pass


class DensityViolatedError(GraphError):
    pass


class ConnectivityError(GraphError):
    pass


@dataclass(frozen=True)
class EmbeddedGraph:
    graph: MultiGraph
    rotation: tuple[tuple[int, ...], ...]  # clockwise incident edge ids per vertex

    def __post_init__(self) -> None:
        g = self.graph
        if len(self.rotation) != g.n:
            raise EmbeddingError("rotation must list every vertex")
        for v in range(g.n):
            if sorted(self.rotation[v]) != sorted(g.incident[v]):
                raise EmbeddingError(f"rotation at vertex {v} does not match its incident edges")

    @classmethod
    def from_lists(cls, graph: MultiGraph, rotation: Sequence[Sequence[int]]) -> "EmbeddedGraph":
        return cls(graph, tuple(tuple(r) for r in rotation))


Dart = tuple[int, int]  # (edge id, tail vertex)


def faces(eg: EmbeddedGraph) -> list[list[Dart]]:
    """Face boundaries as dart cycles; raises unless Euler's formula holds."""
    g = eg.graph
    succ: dict[tuple[int, int], int] = {}
    for v, rot in enumerate(eg.rotation):
        for i, e in enumerate(rot):
            succ[(v, e)] = rot[(i + 1) % len(rot)]
    seen: set[Dart] = set()
    out = []
    for e, (a, b) in enumerate(g.edges):
        for start in ((e, a), (e, b)):
            if start in seen:
                continue
            face = []
            dart = start
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                eid, tail = dart
                head = g.other(eid, tail)
                dart = (succ[(head, eid)], head)
            if dart != start:
                raise EmbeddingError("dart orbit does not close")
            out.append(face)
    if g.is_connected() and g.n - g.m + len(out) != 2:
        raise EmbeddingError(f"Euler check failed: v - e + f = {g.n - g.m + len(out)}")
    return out


@dataclass(frozen=True)
class DualGraph:
    dual: MultiGraph
    faces: tuple[tuple[Dart, ...], ...]
    # dual edge j corresponds to primal edge phi[j]; ids coincide by construction
    phi: tuple[int, ...]

    def primal_edge(self, dual_edge: int) -> int:
        return self.phi[dual_edge]


def dual_graph(eg: EmbeddedGraph) -> DualGraph:
    fs = faces(eg)
    where: dict[Dart, int] = {}
    for i, face in enumerate(fs):
        for dart in face:
            where[dart] = i
    g = eg.graph
    edges = tuple((where[(e, a)], where[(e, b)]) for e, (a, b) in enumerate(g.edges))
    if any(x == y for x, y in edges):
        raise EmbeddingError("a bridge would give the dual a loop")
    return DualGraph(MultiGraph(len(fs), edges), tuple(tuple(f) for f in fs), tuple(range(g.m)))


def dual_embedding(eg: EmbeddedGraph) -> EmbeddedGraph:
    """The dual as an embedded graph; each face lists its edges in boundary order."""
    dual = dual_graph(eg)
    rotation = tuple(tuple(e for e, _ in face) for face in dual.faces)
    return EmbeddedGraph(dual.dual, rotation)


def is_simple(g: MultiGraph) -> bool:
    pairs = {frozenset(e) for e in g.edges}
    return len(pairs) == g.m


def girth(g: MultiGraph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    if not is_simple(g):
        return 2
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        via = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for eid in g.incident[x]:
                y = g.other(eid, x)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    via[y] = eid
                    queue.append(y)
                elif eid != via[x]:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def edge_connectivity(g: MultiGraph) -> int:
    """Global minimum edge cut via unit max-flows from vertex 0."""
    if g.n < 2:
        raise GraphError("edge connectivity needs at least two vertices")
    if not g.is_connected():
        raise DisconnectedInputError("edge connectivity of a disconnected graph")
    best = g.m
    for t in range(1, g.n):
        net = FlowNetwork(g.n)
        for u, v in g.edges:
            net.add_edge(u, v, 1, 1)
        best = min(best, net.max_flow(0, t, limit=best))
    return best


def girth5_decompose(g: MultiGraph, *, debug: bool = False) -> Decomposition:
    """A spanning tree plus a forest whose components have at most five edges."""
    if not is_simple(g) or girth(g) < 5:
        raise GirthTooSmallError("need a simple graph of girth at least five")
    gamma = fractional_arboricity(g)
    if gamma > GIRTH5_DENSITY:
        raise DensityViolatedError(f"fractional arboricity {gamma} exceeds 5/3; input cannot be planar")
    result = run(g, 1, 5, debug=debug)
    if not result.ok:
        raise AssertionError("decomposition engine stuck below its density threshold")
    report = validate(result.decomposition, require_spanning=False, bound=5)
    if not report:
        raise AssertionError(report.reason)
    return result.decomposition


@dataclass(frozen=True)
class ThinTreeCertificate:
    tree: tuple[int, ...]
    max_ratio: Fraction
    mode: str
    worst_cut: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "tree": list(self.tree),
            "max_ratio": f"{self.max_ratio.numerator}/{self.max_ratio.denominator}",
            "mode": self.mode,
            "worst_cut": list(self.worst_cut),
        }


def _spanning_subtree(g: MultiGraph, edge_ids: Sequence[int]) -> list[int]:
    # Kruskal in increasing id order keeps exactly the edges that survive
    # repeatedly deleting the largest-id edge lying on a cycle.
    parent = list(range(g.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    kept = []
    for e in sorted(edge_ids):
        a, b = find(g.edges[e][0]), find(g.edges[e][1])
        if a != b:
            parent[a] = b
            kept.append(e)
    return kept


def thin_tree(eg: EmbeddedGraph, mode: str = "exhaustive", *, seed: int = 0) -> ThinTreeCertificate:
    """A spanning tree meeting every cut in at most 5/6 of its edges."""
    g = eg.graph
    if not g.is_connected():
        raise DisconnectedInputError("thin trees need a connected graph")
    lam = edge_connectivity(g)
    if lam < 5:
        raise ConnectivityError(f"graph is only {lam}-edge-connected; need 5")
    dual = dual_graph(eg)
    if not is_simple(dual.dual) or girth(dual.dual) < 5:
        raise EmbeddingError("dual of a 5-edge-connected plane graph must be simple with girth >= 5")
    dec = girth5_decompose(dual.dual)
    forest = [dual.primal_edge(e) for e in sorted(dec.red)]
    sub = MultiGraph(g.n, tuple(g.edges[e] for e in forest))
    if not sub.is_connected():
        raise AssertionError("image of the bounded forest must be connected and spanning")
    tree = _spanning_subtree(g, forest)
    ratio, worst = verify_thinness(g, tree, mode, seed=seed)
    return ThinTreeCertificate(tuple(tree), ratio, mode, worst)


def verify_thinness(g: MultiGraph, tree: Sequence[int], mode: str = "exhaustive", *,
                    seed: int = 0) -> tuple[Fraction, tuple[int, ...]]:
    """Largest share of tree edges in a vertex-bipartition cut, and the side attaining it.

    ``mode`` is ``"exhaustive"`` or ``"sampled:N"``.  Vertex 0 is always on
    the reported side.
    """
    in_tree = [False] * g.m
    for e in tree:
        in_tree[e] = True
    if mode == "exhaustive":
        if g.n > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive verification limited to n <= {EXHAUSTIVE_LIMIT}")
        return _exhaustive(g, in_tree)
    if mode.startswith("sampled:"):
        count = int(mode.split(":", 1)[1])
        return _sampled(g, in_tree, count, seed)
    raise ValueError(f"unknown verification mode {mode!r}")


def _exhaustive(g: MultiGraph, in_tree: list[bool]) -> tuple[Fraction, tuple[int, ...]]:
    # Gray-code walk over subsets of {1..n-1} moved to the far side; vertex 0 stays put.
    side = [0] * g.n
    cut = tree_cut = 0
    best_num, best_den, best_mask = 0, 1, None
    mask = 0
    for i in range(1, 1 << (g.n - 1)):
        v = (i & -i).bit_length()  # flip vertex v (1-based because vertex 0 is fixed)
        side[v] ^= 1
        mask ^= 1 << v
        for eid in g.incident[v]:
            w = g.other(eid, v)
            delta = 1 if side[w] != side[v] else -1
            cut += delta
            if in_tree[eid]:
                tree_cut += delta
        if cut and tree_cut * best_den > best_num * cut:
            best_num, best_den, best_mask = tree_cut, cut, mask
    if best_mask is None:
        return Fraction(0), (0,)
    return Fraction(best_num, best_den), tuple(v for v in range(g.n) if not best_mask >> v & 1)


def _sampled(g: MultiGraph, in_tree: list[bool], count: int, seed: int) -> tuple[Fraction, tuple[int, ...]]:
    rng = random.Random(seed)
    best = Fraction(0)
    worst: Optional[tuple[int, ...]] = None
    for _ in range(count):
        near = {0} | {v for v in range(1, g.n) if rng.random() < 0.5}
        if len(near) == g.n:
            continue
        cut = [e for e, (a, b) in enumerate(g.edges) if (a in near) != (b in near)]
        if not cut:
            continue
        ratio = Fraction(sum(in_tree[e] for e in cut), len(cut))
        if ratio > best or worst is None:
            best, worst = max(best, ratio), tuple(sorted(near))
    return best, worst or (0,)
