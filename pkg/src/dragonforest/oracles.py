"""Brute-force ground truth for small inputs.

These deliberately share no traversal code with the main modules: they
enumerate subsets and colourings directly and use a private union-find.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional

from .graph import MultiGraph


class TooLargeError(ValueError):
    pass


class _DSU:
    def __init__(self, n: int) -> None:
        self.p = list(range(n))
        self.size = [0] * n  # edges per root

    def find(self, x: int) -> int:
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.p[ra] = rb
        self.size[rb] += self.size[ra] + 1
        return True


def brute_force_fractional_arboricity(g: MultiGraph) -> Fraction:
    if g.n > 16:
        raise TooLargeError("brute force density needs n <= 16")
    best = Fraction(0)
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    for s in range(1, 1 << g.n):
        size = bin(s).count("1")
        if size < 2:
            continue
        e = sum(1 for em in masks if em & s == em)
        val = Fraction(e, size - 1)
        if val > best:
            best = val
    return best


def _is_forest(n: int, edges) -> bool:
    dsu = _DSU(n)
    return all(dsu.union(u, v) for u, v in edges)


def brute_force_forest_packing(g: MultiGraph, k: int) -> int:
    """Maximum total size of ``k`` edge-disjoint forests (exhaustive)."""
    if g.m > 12:
        raise TooLargeError("brute force packing needs m <= 12")
    best = 0
    # colour k+1 means "unused"
    for colouring in itertools.product(range(k + 1), repeat=g.m):
        used = sum(1 for c in colouring if c < k)
        if used <= best:
            continue
        if all(_is_forest(g.n, [g.edges[e] for e in range(g.m) if colouring[e] == c]) for c in range(k)):
            best = used
    return best


def brute_force_sndt(g: MultiGraph, k: int, d: int) -> Optional[list[int]]:
    """First colouring into ``k+1`` forests whose last class has components <= d edges.

    Returns the colour of each edge (``k`` marks the bounded forest) or ``None``.
    """
    if (k + 1) ** g.m > 10 ** 7:
        raise TooLargeError("brute force SNDT needs (k+1)^m <= 10^7")
    for colouring in itertools.product(range(k + 1), repeat=g.m):
        ok = True
        for c in range(k + 1):
            dsu = _DSU(g.n)
            for e in range(g.m):
                if colouring[e] == c and not dsu.union(*g.edges[e]):
                    ok = False
                    break
            if not ok:
                break
            if c == k and any(dsu.size[dsu.find(v)] > d for v in range(g.n)):
                ok = False
                break
        if ok:
            return list(colouring)
    return None


def enumerate_legal_orders(dec, r: int) -> list[tuple[int, ...]]:
    """All legal orders of a decomposition's red components, as tuples of component ids.

    Component ids are smallest member vertices; the first entry is the
    component of ``r``.
    """
    g = dec.graph
    dsu = _DSU(g.n)
    for e in dec.red:
        dsu.union(*g.edges[e])
    label = {}
    for v in range(g.n):
        label.setdefault(dsu.find(v), v)
    comp = [label[dsu.find(v)] for v in range(g.n)]
    sizes = {c: 0 for c in comp}
    for e in dec.red:
        sizes[comp[g.edges[e][0]]] += 1
    arcs = set()
    for t in dec.blue:
        for v in range(g.n):
            p = t.parent[v]
            if p >= 0 and comp[v] != comp[p]:
                arcs.add((comp[v], comp[p]))
    return orders_of_digraph(sizes, comp[r], arcs)


def orders_of_digraph(sizes: dict[int, int], first: int,
                      arcs: set[tuple[int, int]]) -> list[tuple[int, ...]]:
    """All legal orders of red components given as an abstract digraph.

    ``sizes`` maps component id to edge count, ``first`` is the root
    component and ``arcs`` holds ``(a, b)`` whenever a blue edge leads from
    component ``a`` into component ``b``.  Only components reachable from
    ``first`` take part.
    """
    reach = {first}
    frontier = [first]
    while frontier:
        a = frontier.pop()
        for x, y in arcs:
            if x == a and y not in reach:
                reach.add(y)
                frontier.append(y)
    if len(reach) > 9:
        raise TooLargeError("at most 9 red components")
    orders = []
    rest = sorted(reach - {first})
    for perm in itertools.permutations(rest):
        placed = {first}
        ok = True
        for c in perm:
            if not any((p, c) in arcs for p in placed):
                ok = False
                break
            placed.add(c)
        if ok:
            orders.append((first,) + perm)
    return orders
