"""Blue directed paths that let a blue edge turn red in exchange for a red one."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from ..graph import Decomposition, GraphError, OrientedTree
from .structures import LegalOrder


class AugmentError(GraphError):
    pass


@dataclass(frozen=True)
class SpecialPath:
    """``vertices[0] -> ... -> vertices[-1]`` along blue edges ``edges``/``trees``.

    ``anchor`` is the red neighbour of the start vertex whose edge
    ``anchor_edge`` turns blue; the last blue edge turns red.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    trees: tuple[int, ...]
    anchor: int
    anchor_edge: int
    start_index: Optional[int] = None

    @property
    def designated(self) -> int:
        return self.edges[-1]


def _red_edge_between(dec: Decomposition, a: int, b: int) -> Optional[int]:
    for eid in dec.red_adjacency[a]:
        if dec.graph.other(eid, a) == b:
            return eid
    return None


def blue_predecessors(dec: Decomposition, target: int, allowed: Optional[frozenset[int]] = None) -> set[int]:
    """Vertices with a blue directed path to ``target`` (including ``target``)."""
    seen = {target}
    queue = deque([target])
    while queue:
        x = queue.popleft()
        for t in dec.blue:
            for c in t.children[x]:
                if c not in seen and (allowed is None or c in allowed):
                    seen.add(c)
                    queue.append(c)
    return seen


def blue_path(dec: Decomposition, start: int, target: int,
              allowed: Optional[frozenset[int]] = None) -> Optional[list[tuple[int, int, int]]]:
    """Shortest blue directed path as ``(vertex, tree, edge)`` steps, or None."""
    if start == target:
        return []
    prev: dict[int, tuple[int, int, int]] = {start: (-1, -1, -1)}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i, t in enumerate(dec.blue):
            y = t.parent[x]
            if y < 0 or y in prev or (allowed is not None and y not in allowed):
                continue
            prev[y] = (x, i, t.parent_edge[x])
            if y == target:
                steps = []
                while y != start:
                    px, pi, pe = prev[y]
                    steps.append((px, pi, pe))
                    y = px
                steps.reverse()
                return steps
            queue.append(y)
    return None


def find_minimal_special_path(dec: Decomposition, order: LegalOrder, tree: int, x: int) -> SpecialPath:
    """Minimal special path ending with the blue edge from ``x`` in ``tree``.

    The head must lie in a later component of ``order`` than ``x``.
    """
    t = dec.blue[tree]
    y = t.parent[x]
    ix, iy = order.index(x), order.index(y)
    if ix is None or iy is None or iy <= ix:
        raise AugmentError("edge does not point to a later component")
    inside = order.vertices
    reach = blue_predecessors(dec, x, inside)
    i0 = min(order.index(v) for v in reach)
    cands = [v for v in reach if order.index(v) == i0]
    minimal = [v for v in cands if not any(w != v and order.is_aux_ancestor(w, v) for w in cands)]
    for v0 in sorted(minimal, key=lambda v: (order.aux_depth[v], v)):
        anchor = order.aux_parent[v0]
        if anchor < 0:
            continue
        aedge = _red_edge_between(dec, v0, anchor)
        if aedge is None:
            continue
        if _same_side(dec, order.components[i0 - 1].vertices, v0, anchor, x):
            continue
        steps = blue_path(dec, v0, x, inside)
        verts = [v0] + [s for s in _heads(steps, x)] + [y]
        edges = [e for _, _, e in steps] + [t.parent_edge[x]]
        trees = [i for _, i, _ in steps] + [tree]
        return SpecialPath(tuple(verts), tuple(edges), tuple(trees), anchor, aedge, i0)
    raise AugmentError("no admissible minimal special path")


def _heads(steps, x: int) -> list[int]:
    # vertices after the start along the steps (the last one is x)
    return [steps[j + 1][0] for j in range(len(steps) - 1)] + ([x] if steps else [])


def _same_side(dec: Decomposition, comp: frozenset[int], cut: int, anchor: int, x: int) -> bool:
    """Is ``x`` in the piece of ``comp - cut`` that contains ``anchor``?"""
    if x not in comp or x == cut:
        return False
    seen = {anchor}
    stack = [anchor]
    while stack:
        a = stack.pop()
        if a == x:
            return True
        for eid in dec.red_adjacency[a]:
            b = dec.graph.other(eid, a)
            if b != cut and b not in seen:
                seen.add(b)
                stack.append(b)
    return False


def _forward_chain(dec: Decomposition, sp: SpecialPath) -> Optional[Decomposition]:
    """Shift each path edge one step back: ``v_j`` now hangs off ``v_{j-1}``."""
    parents = [list(t.parent) for t in dec.blue]
    pedges = [list(t.parent_edge) for t in dec.blue]
    prev_v, prev_e = sp.anchor, sp.anchor_edge
    for v, e, i in zip(sp.vertices, sp.edges, sp.trees):
        if dec.blue[i].parent_edge[v] != e:
            return None
        parents[i][v] = prev_v
        pedges[i][v] = prev_e
        prev_v, prev_e = v, e
    trees = []
    for i, t in enumerate(dec.blue):
        nt = OrientedTree(t.root, tuple(parents[i]), tuple(pedges[i]))
        if i in sp.trees and not nt.is_spanning():
            return None
        trees.append(nt)
    red = (dec.red - {sp.anchor_edge}) | {sp.designated}
    return dec.with_changes(blue=trees, red=red)


def exchange_chain(dec: Decomposition, entering: int, leaving: int,
                   protected: frozenset[int] = frozenset()) -> Optional[Decomposition]:
    """Red ``entering`` turns blue and blue ``leaving`` turns red, trees re-spanned.

    Shortest path in the exchange digraph of the blue trees, so the
    simultaneous swaps keep every tree spanning.
    """
    g = dec.graph
    owner = {}
    for i, t in enumerate(dec.blue):
        for e in t.edge_ids():
            owner[e] = i
    adj = [[[] for _ in range(g.n)] for _ in dec.blue]
    for i, t in enumerate(dec.blue):
        for v, p, e in t.directed_edges():
            adj[i][v].append((p, e))
            adj[i][p].append((v, e))

    def tree_path_edges(i: int, a: int, b: int) -> list[int]:
        prev = {a: (-1, -1)}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            if x == b:
                break
            for y, e in adj[i][x]:
                if y not in prev:
                    prev[y] = (x, e)
                    queue.append(y)
        out = []
        while b != a:
            b, e = prev[b]
            out.append(e)
        return out

    prev: dict[int, tuple[int, int]] = {entering: (-1, -1)}
    queue = deque([entering])
    found = False
    while queue and not found:
        cur = queue.popleft()
        u, v = g.edges[cur]
        for i in range(len(dec.blue)):
            if owner.get(cur) == i:
                continue
            for f in tree_path_edges(i, u, v):
                if f in prev or f in protected:
                    continue
                prev[f] = (cur, i)
                if f == leaving:
                    found = True
                    break
                queue.append(f)
            if found:
                break
    if not found:
        return None
    sets = [set(t.edge_ids()) for t in dec.blue]
    cur = leaving
    while prev[cur][0] >= 0:
        before, i = prev[cur]
        sets[i].discard(cur)
        sets[i].add(before)
        cur = before
    try:
        trees = tuple(OrientedTree.from_edges(g, sets[i], dec.blue[i].root) for i in range(len(dec.blue)))
    except GraphError:
        return None
    if not all(t.is_spanning() for t in trees):
        return None
    red = (dec.red - {entering}) | {leaving}
    return dec.with_changes(blue=trees, red=red)


def augment(dec: Decomposition, sp: SpecialPath) -> Optional[Decomposition]:
    """Apply the swap along ``sp``; None when neither construction succeeds."""
    out = _forward_chain(dec, sp)
    if out is None:
        out = exchange_chain(dec, sp.anchor_edge, sp.designated)
    if out is not None and _red_has_cycle(out):
        return None
    return out


def _red_has_cycle(dec: Decomposition) -> bool:
    parent = list(range(dec.graph.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in dec.red:
        a, b = (find(v) for v in dec.graph.edges[e])
        if a == b:
            return True
        parent[a] = b
    return False


def apply_special_path(dec: Decomposition, order: LegalOrder, sp: SpecialPath) -> Decomposition:
    """Augment along a minimal special path, keeping earlier blue edges fixed."""
    out = _forward_chain(dec, sp)
    if out is None:
        frozen = frozenset(
            t.parent_edge[v] for t in dec.blue for v in order.vertices
            if t.parent[v] >= 0 and order.index(v) < sp.start_index
        )
        out = exchange_chain(dec, sp.anchor_edge, sp.designated, frozen)
    if out is None or _red_has_cycle(out):
        raise AugmentError("special path could not be applied")
    if sp.start_index is not None:
        for old, new in zip(dec.blue, out.blue):
            for v in order.vertices:
                if order.index(v) < sp.start_index and old.parent_edge[v] != new.parent_edge[v]:
                    raise AugmentError("augmentation touched an earlier blue edge")
    return out


def candidate_paths(dec: Decomposition, tree: int, x: int, starts: Sequence[int],
                    limit: int = 3) -> Iterator[SpecialPath]:
    """Special paths ending in the blue edge at ``x`` from each of ``starts``.

    For each start every red neighbour is tried as anchor, with a few
    alternative blue routes (shortest first, then avoiding its edges).
    """
    t = dec.blue[tree]
    y = t.parent[x]
    designated = t.parent_edge[x]
    for v0 in starts:
        if v0 == y:
            continue
        routes = _routes(dec, v0, x, limit)
        for eid in dec.red_adjacency[v0]:
            anchor = dec.graph.other(eid, v0)
            for steps in routes:
                verts = [v0] + _heads(steps, x) + [y]
                if len(set(verts)) != len(verts):
                    continue
                edges = [e for _, _, e in steps] + [designated]
                trees = [i for _, i, _ in steps] + [tree]
                yield SpecialPath(tuple(verts), tuple(edges), tuple(trees), anchor, eid)


def _routes(dec: Decomposition, start: int, target: int, limit: int) -> list[list[tuple[int, int, int]]]:
    routes = []
    first = blue_path(dec, start, target)
    if first is None:
        return routes
    routes.append(first)
    # cheap diversity: block one intermediate vertex at a time
    for step in first[1:]:
        if len(routes) >= limit:
            break
        allowed = frozenset(range(dec.graph.n)) - {step[0]}
        alt = blue_path(dec, start, target, allowed)
        if alt is not None and alt not in routes:
            routes.append(alt)
    return routes
