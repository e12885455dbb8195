"""Forest packing by matroid union (union of graphic matroids).

Edges are inserted one at a time; an edge that closes a cycle in every forest
is pushed along a shortest augmenting sequence of forest swaps found by BFS
over the exchange digraph.  A failed search leaves behind the set of edges it
reached, whose connected pieces certify optimality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .graph import Decomposition, DisconnectedInputError, GraphError, MultiGraph, OrientedTree


class InsufficientForestsError(GraphError):
    """The graph does not split into the requested number of forests."""

    def __init__(self, message: str, witness: frozenset[int]) -> None:
        super().__init__(message)
        self.witness = witness


class _Forests:
    """``k`` edge-disjoint forests with per-forest adjacency."""

    def __init__(self, graph: MultiGraph, k: int) -> None:
        self.g = graph
        self.k = k
        self.owner: dict[int, int] = {}
        self.adj: list[list[set[int]]] = [[set() for _ in range(graph.n)] for _ in range(k)]

    def add(self, eid: int, i: int) -> None:
        u, v = self.g.edges[eid]
        self.adj[i][u].add(eid)
        self.adj[i][v].add(eid)
        self.owner[eid] = i

    def remove(self, eid: int) -> None:
        i = self.owner.pop(eid)
        u, v = self.g.edges[eid]
        self.adj[i][u].discard(eid)
        self.adj[i][v].discard(eid)

    def path(self, i: int, a: int, b: int) -> Optional[list[int]]:
        """Edge ids of the path from ``a`` to ``b`` in forest ``i``, None if disconnected."""
        if a == b:
            return []
        prev = {a: -1}
        queue = deque([a])
        adj = self.adj[i]
        while queue:
            x = queue.popleft()
            for eid in sorted(adj[x]):
                y = self.g.other(eid, x)
                if y in prev:
                    continue
                prev[y] = eid
                if y == b:
                    out = []
                    while y != a:
                        f = prev[y]
                        out.append(f)
                        y = self.g.other(f, y)
                    return out
                queue.append(y)
        return None

    def edge_sets(self) -> list[frozenset[int]]:
        sets: list[set[int]] = [set() for _ in range(self.k)]
        for eid, i in self.owner.items():
            sets[i].add(eid)
        return [frozenset(s) for s in sets]

    def try_insert(self, eid: int, forests: Sequence[int]) -> tuple[bool, set[int]]:
        """Insert ``eid`` into one of ``forests`` via a shortest swap sequence.

        Returns ``(success, reached)`` where ``reached`` is the set of edges
        visited by the search (meaningful on failure).
        """
        prev: dict[int, tuple[int, int]] = {eid: (-1, -1)}
        queue = deque([eid])
        while queue:
            cur = queue.popleft()
            u, v = self.g.edges[cur]
            for i in forests:
                if self.owner.get(cur) == i:
                    continue
                path = self.path(i, u, v)
                if path is None:
                    self._apply(cur, i, prev)
                    return True, set()
                for f in path:
                    if f not in prev:
                        prev[f] = (cur, i)
                        queue.append(f)
        return False, set(prev)

    def _apply(self, last: int, sink: int, prev: dict[int, tuple[int, int]]) -> None:
        moves = [(last, sink)]
        cur = last
        while prev[cur][0] >= 0:
            before, i = prev[cur]
            moves.append((before, i))  # `before` replaces `cur` in forest i
            cur = before
        for e, _ in moves:
            if e in self.owner:
                self.remove(e)
        for e, i in moves:
            self.add(e, i)


def _parts_from(graph: MultiGraph, reached: Iterable[int]) -> list[list[int]]:
    sub = MultiGraph(graph.n, tuple(graph.edges[e] for e in sorted(set(reached))))
    return sub.components()


@dataclass(frozen=True)
class PackingResult:
    forests: tuple[frozenset[int], ...]
    leftover: frozenset[int]
    # vertex partition certifying maximality: every forest spans each part,
    # and every leftover edge lies inside a part
    parts: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return sum(len(f) for f in self.forests)


def max_forest_packing(g: MultiGraph, k: int) -> PackingResult:
    if k < 1:
        raise ValueError("k must be positive")
    fs = _Forests(g, k)
    leftover: list[int] = []
    for eid in range(g.m):
        ok, _ = fs.try_insert(eid, range(k))
        if not ok:
            leftover.append(eid)
    parts = _closure_parts(fs, g, leftover, range(k))
    return PackingResult(tuple(fs.edge_sets()), frozenset(leftover), parts)


def _closure_parts(fs: _Forests, g: MultiGraph, seeds: Sequence[int], forests) -> tuple[tuple[int, ...], ...]:
    reached: set[int] = set(seeds)
    queue = deque(seeds)
    while queue:
        cur = queue.popleft()
        u, v = g.edges[cur]
        for i in forests:
            if fs.owner.get(cur) == i:
                continue
            path = fs.path(i, u, v)
            if path is None:
                raise AssertionError("augmentable edge left over")
            for f in path:
                if f not in reached:
                    reached.add(f)
                    queue.append(f)
    return tuple(tuple(p) for p in _parts_from(g, reached))


def _dense_witness(g: MultiGraph, parts, eid: int) -> frozenset[int]:
    u = g.edges[eid][0]
    for part in parts:
        if u in part:
            return frozenset(part)
    raise AssertionError("leftover edge outside every part")


def nash_williams_decompose(g: MultiGraph, k: int) -> list[frozenset[int]]:
    """Partition the edges into ``k`` forests, or raise with a dense vertex set."""
    res = max_forest_packing(g, k)
    if res.leftover:
        witness = _dense_witness(g, res.parts, min(res.leftover))
        raise InsufficientForestsError(f"graph does not decompose into {k} forests", witness)
    return list(res.forests)


@dataclass(frozen=True)
class ReductionNeeded:
    """No ``k`` edge-disjoint spanning trees; the packing splits along ``parts``.

    Inside every part each blue forest restricts to a spanning tree of the
    part, all red edges lie inside parts, and all edges between parts are blue.
    """

    blue: tuple[frozenset[int], ...]
    red: frozenset[int]
    parts: tuple[tuple[int, ...], ...]

    @property
    def tight_set(self) -> frozenset[int]:
        for part in self.parts:
            if len(part) >= 2:
                return frozenset(part)
        return frozenset(self.parts[0])


def spanning_trees_plus_forest(g: MultiGraph, k: int, root: int = 0) -> Union[Decomposition, ReductionNeeded]:
    """Split into ``k`` blue forests of maximum total size plus one red forest."""
    if not g.is_connected():
        raise DisconnectedInputError("spanning trees need a connected graph")
    full = max_forest_packing(g, k + 1)
    if full.leftover:
        witness = _dense_witness(g, full.parts, min(full.leftover))
        raise InsufficientForestsError(f"graph does not decompose into {k + 1} forests", witness)
    fs = _Forests(g, k + 1)
    for i, forest in enumerate(full.forests):
        for eid in forest:
            fs.add(eid, i)
    blue = list(range(k))
    # grow the blue union with red edges; failures stay spanned, so one pass suffices
    for eid in sorted(full.forests[k]):
        fs.remove(eid)
        ok, _ = fs.try_insert(eid, blue)
        if not ok:
            fs.add(eid, k)
    sets = fs.edge_sets()
    if all(len(sets[i]) == g.n - 1 for i in blue):
        trees = tuple(OrientedTree.from_edges(g, sets[i], root) for i in blue)
        return Decomposition(g, trees, sets[k])
    parts = _closure_parts(fs, g, sorted(sets[k]), blue)
    return ReductionNeeded(tuple(sets[:k]), sets[k], parts)
