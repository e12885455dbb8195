"""Orders, potentials and the explored region around the oversized component."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..density import is_small
from ..graph import Decomposition, OrientedTree, RedComponent, red_components


def reroot(dec: Decomposition, r: int) -> Decomposition:
    """Orient every blue tree towards ``r``; edge sets are unchanged."""
    if all(t.root == r for t in dec.blue):
        return dec
    trees = tuple(OrientedTree.from_edges(dec.graph, t.edge_ids(), r) for t in dec.blue)
    return dec.with_changes(blue=trees)


def red_degree(dec: Decomposition, v: int) -> int:
    return len(dec.red_adjacency[v])


def choose_root(component: RedComponent, dec: Decomposition, k: int, d: int) -> int:
    """Pick the vertex of the oversized component that blue trees point to.

    Any vertex of red degree >= 2 works when ``d <= k+1``.  Otherwise removing
    any single red edge at the root must leave at least two red edges at it:
    degree >= 3, or two edge-disjoint red arms of length >= 2.
    """
    verts = sorted(component.vertices)
    if d <= k + 1:
        for v in verts:
            if red_degree(dec, v) >= 2:
                return v
        raise ValueError("component has no vertex of red degree 2")
    for v in verts:
        if red_degree(dec, v) >= 3:
            return v
    for v in verts:
        if red_degree(dec, v) < 2:
            continue
        arms = 0
        for eid in dec.red_adjacency[v]:
            w = dec.graph.other(eid, v)
            if red_degree(dec, w) >= 2:
                arms += 1
        if arms >= 2:
            return v
    raise ValueError("component has no admissible root")


# --- potential ---------------------------------------------------------------

@dataclass(frozen=True)
class ResidueVector:
    """Counts of red components with ``i`` edges for ``i = n-1 .. d+1``."""

    counts: tuple[int, ...]
    top: int  # the size that counts[0] refers to

    @classmethod
    def of(cls, dec: Decomposition, d: int) -> "ResidueVector":
        top = dec.graph.n - 1
        counts = [0] * max(0, top - d)
        for comp in red_components(dec):
            if comp.edge_count > d:
                counts[top - comp.edge_count] += 1
        return cls(tuple(counts), top)

    def is_zero(self) -> bool:
        return not any(self.counts)

    def as_dict(self) -> dict[int, int]:
        return {self.top - i: c for i, c in enumerate(self.counts) if c}


@dataclass(frozen=True)
class Potential:
    rho: ResidueVector
    sigma_sizes: tuple[int, ...]

    def key(self, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.rho.counts, self.sigma_sizes + (0,) * (n - len(self.sigma_sizes))

    def __lt__(self, other: "Potential") -> bool:
        n = max(len(self.sigma_sizes), len(other.sigma_sizes))
        return self.key(n) < other.key(n)

    def __le__(self, other: "Potential") -> bool:
        n = max(len(self.sigma_sizes), len(other.sigma_sizes))
        return self.key(n) <= other.key(n)

    def describe(self) -> dict:
        return {"rho": self.rho.as_dict(), "sigma": list(self.sigma_sizes)}


# --- exploration subgraph ----------------------------------------------------

@dataclass(frozen=True)
class ExplorationSubgraph:
    vertices: frozenset[int]
    red_edges: frozenset[int]
    blue_edges: frozenset[tuple[int, int]]  # (tree index, child vertex)

    def blue_out_degree(self, dec: Decomposition, v: int) -> int:
        return sum(1 for i, t in enumerate(dec.blue) if t.parent[v] >= 0 and t.parent[v] in self.vertices)


def exploration_subgraph(dec: Decomposition, r: int) -> ExplorationSubgraph:
    seen = {r}
    queue = deque([r])
    while queue:
        x = queue.popleft()
        nxt = [t.parent[x] for t in dec.blue if t.parent[x] >= 0]
        nxt += [dec.graph.other(e, x) for e in dec.red_adjacency[x]]
        for y in nxt:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    red = frozenset(e for e in dec.red if dec.graph.edges[e][0] in seen)
    blue = frozenset((i, v) for i, t in enumerate(dec.blue) for v in seen
                     if t.parent[v] >= 0 and t.parent[v] in seen)
    return ExplorationSubgraph(frozenset(seen), red, blue)


# --- legal orders ------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    tail: int
    head: int
    edge: int
    tree: int


@dataclass(frozen=True)
class LegalOrder:
    components: tuple[RedComponent, ...]
    generators: tuple[Optional[Generator], ...]  # None for the first component
    position: dict  # vertex -> 1-based index of its component
    aux_parent: dict  # vertex -> parent in the auxiliary tree (root maps to -1)
    aux_depth: dict

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(c.edge_count for c in self.components)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.position)

    def index(self, v: int) -> Optional[int]:
        return self.position.get(v)

    def component_of(self, v: int) -> RedComponent:
        return self.components[self.position[v] - 1]

    def is_aux_ancestor(self, a: int, b: int) -> bool:
        """True iff ``a`` is an ancestor of ``b`` in the auxiliary tree (reflexive)."""
        while b >= 0:
            if b == a:
                return True
            b = self.aux_parent[b]
        return False

    def auxiliary_edges(self) -> list[tuple[int, int]]:
        return [(v, p) for v, p in self.aux_parent.items() if p >= 0]


def _components_by_id(dec: Decomposition) -> dict[int, RedComponent]:
    return {c.id: c for c in red_components(dec)}


def minimal_legal_order(dec: Decomposition, r: int,
                        prefix: Sequence[frozenset[int]] = ()) -> LegalOrder:
    """Lexicographically smallest legal order starting at the component of ``r``.

    Greedy: place the reachable component with fewest edges next (ties by
    component id), which is optimal because placing a component never makes
    another one unreachable.  ``prefix`` optionally forces leading components
    (given by vertex set) for as long as they remain legal.
    """
    comp_of = dec.red_component_index
    comps = _components_by_id(dec)
    start = comps[comp_of[r]]
    order = [start]
    gens: list[Optional[Generator]] = [None]
    placed = {start.id}
    best_gen: dict[int, Generator] = {}
    heap: list[tuple[int, int]] = []

    def expand(comp: RedComponent) -> None:
        for x in sorted(comp.vertices):
            for i, t in enumerate(dec.blue):
                y = t.parent[x]
                if y < 0:
                    continue
                cid = comp_of[y]
                if cid in placed:
                    continue
                g = Generator(x, y, t.parent_edge[x], i)
                old = best_gen.get(cid)
                if old is None:
                    best_gen[cid] = g
                    heapq.heappush(heap, (comps[cid].edge_count, cid))
                elif g.edge < old.edge:
                    best_gen[cid] = g

    def place(cid: int) -> None:
        placed.add(cid)
        order.append(comps[cid])
        gens.append(best_gen[cid])
        expand(comps[cid])

    expand(start)
    if prefix and prefix[0] == start.vertices:
        for verts in prefix[1:]:
            cid = comp_of[min(verts)]
            if cid in placed or comps[cid].vertices != verts or cid not in best_gen:
                break
            place(cid)
    while heap:
        _, cid = heapq.heappop(heap)
        if cid in placed:
            continue
        place(cid)

    position: dict[int, int] = {}
    for idx, comp in enumerate(order, start=1):
        for v in comp.vertices:
            position[v] = idx
    aux_parent, aux_depth = _auxiliary_tree(dec, order, gens, r)
    return LegalOrder(tuple(order), tuple(gens), position, aux_parent, aux_depth)


def _auxiliary_tree(dec: Decomposition, order, gens, r: int) -> tuple[dict, dict]:
    parent = {r: -1}
    depth = {r: 0}
    entries = [(r, order[0])] + [(g.head, c) for g, c in zip(gens[1:], order[1:])]
    for idx, (entry, comp) in enumerate(entries):
        if idx > 0:
            g = gens[idx]
            parent[entry] = g.tail
            depth[entry] = depth[g.tail] + 1
        queue = deque([entry])
        while queue:
            x = queue.popleft()
            for eid in dec.red_adjacency[x]:
                y = dec.graph.other(eid, x)
                if y not in parent:
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    queue.append(y)
    return parent, depth


def potential(dec: Decomposition, r: int, d: int, order: Optional[LegalOrder] = None) -> Potential:
    if order is None:
        order = minimal_legal_order(dec, r)
    return Potential(ResidueVector.of(dec, d), order.sizes)


@dataclass(frozen=True)
class Child:
    component: RedComponent
    tail: int
    head: int
    edge: int
    tree: int


def children(dec: Decomposition, order: LegalOrder, comp: RedComponent) -> list[Child]:
    """Blue edges leaving ``comp`` into components placed later in ``order``."""
    base = order.index(comp.id)
    out = []
    for x in sorted(comp.vertices):
        for i, t in enumerate(dec.blue):
            y = t.parent[x]
            if y < 0:
                continue
            pos = order.index(y)
            if pos is not None and pos > base:
                out.append(Child(order.component_of(y), x, y, t.parent_edge[x], i))
    return out


def small_children(dec: Decomposition, order: LegalOrder, comp: RedComponent, k: int, d: int) -> list[Child]:
    return [c for c in children(dec, order, comp) if is_small(c.component.edge_count, k, d)]


@dataclass(frozen=True)
class DensityCertificate:
    vertices: frozenset[int]
    red_edges: int
    density: Fraction
    decomposition: Decomposition
    small_children: dict  # component id -> per-tree count of small children

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "red_edges": self.red_edges,
            "density": f"{self.density.numerator}/{self.density.denominator}",
        }
