"""Multigraphs, root-oriented trees and the blue/red decomposition model.

Vertices are the integers ``0..n-1``.  Every edge is identified by its index
in :attr:`MultiGraph.edges`; parallel edges are distinct edges, loops are not
allowed.  A :class:`Decomposition` colours each edge either *blue* (member of
one of ``k`` trees oriented towards a common root) or *red* (member of an
undirected forest).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised for structurally invalid graphs or queries."""


class DisconnectedInputError(GraphError):
    pass


@dataclass(frozen=True)
class MultiGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.n < 0:
            raise GraphError("negative vertex count")
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {eid} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"edge {eid} is a loop at vertex {u}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(self.edges):
            inc[u].append(eid)
            inc[v].append(eid)
        return tuple(tuple(x) for x in inc)

    def other(self, eid: int, v: int) -> int:
        u, w = self.edges[eid]
        if v == u:
            return w
        if v == w:
            return u
        raise GraphError(f"vertex {v} is not an endpoint of edge {eid}")

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for eid in self.incident[x]:
                    y = self.other(eid, x)
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices: Iterable[int]) -> tuple["MultiGraph", list[int], list[int]]:
        """Induced subgraph on ``vertices``.

        Returns ``(sub, vmap, emap)`` where ``vmap[i]`` / ``emap[j]`` give the
        original vertex / edge id of the sub-graph's vertex ``i`` / edge ``j``.
        """
        vmap = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vmap)}
        emap = [eid for eid, (u, v) in enumerate(self.edges) if u in index and v in index]
        sub = MultiGraph(len(vmap), tuple((index[self.edges[e][0]], index[self.edges[e][1]]) for e in emap))
        return sub, vmap, emap

    def edges_within(self, vertices: Iterable[int]) -> int:
        s = set(vertices)
        return sum(1 for u, v in self.edges if u in s and v in s)


@dataclass(frozen=True)
class OrientedTree:
    """Parent links of a forest whose edges point towards the roots.

    ``parent[v] == -1`` marks a root.  A *spanning* tree has ``root`` as its
    only root.  ``parent_edge[v]`` is the edge id joining ``v`` to its parent.
    """

    root: int
    parent: tuple[int, ...]
    parent_edge: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.parent)

    def edge_ids(self) -> frozenset[int]:
        return frozenset(e for e in self.parent_edge if e >= 0)

    def directed_edges(self) -> list[tuple[int, int, int]]:
        """``(child, parent, edge_id)`` triples sorted by child."""
        return [(v, p, self.parent_edge[v]) for v, p in enumerate(self.parent) if p >= 0]

    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p < 0]

    def is_spanning(self) -> bool:
        return self.roots() == [self.root] and not self._has_cycle()

    def _has_cycle(self) -> bool:
        state = [0] * self.n  # 0 new, 1 on stack, 2 done
        for s in range(self.n):
            walk = []
            v = s
            while v >= 0 and state[v] == 0:
                state[v] = 1
                walk.append(v)
                v = self.parent[v]
            if v >= 0 and state[v] == 1:
                return True
            for w in walk:
                state[w] = 2
        return False

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(v)
        return tuple(tuple(c) for c in ch)

    def subtree(self, u: int) -> set[int]:
        """All descendants of ``u`` (including ``u``)."""
        out = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for c in self.children[x]:
                out.add(c)
                stack.append(c)
        return out

    def path_to_root(self, a: int) -> list[int]:
        path = [a]
        seen = {a}
        while self.parent[path[-1]] >= 0:
            nxt = self.parent[path[-1]]
            if nxt in seen:
                raise GraphError("parent links contain a cycle")
            seen.add(nxt)
            path.append(nxt)
        return path

    @classmethod
    def from_edges(cls, graph: MultiGraph, edge_ids: Iterable[int], root: int) -> "OrientedTree":
        """Orient the forest ``edge_ids`` towards ``root``.

        Components not containing ``root`` are rooted at their smallest vertex.
        """
        adj: list[list[int]] = [[] for _ in range(graph.n)]
        for eid in sorted(edge_ids):
            u, v = graph.edges[eid]
            adj[u].append(eid)
            adj[v].append(eid)
        parent = [-1] * graph.n
        pedge = [-1] * graph.n
        seen = [False] * graph.n
        order = [root] + [v for v in range(graph.n) if v != root]
        for s in order:
            if seen[s]:
                continue
            seen[s] = True
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for eid in adj[x]:
                    y = graph.other(eid, x)
                    if seen[y]:
                        if pedge[x] != eid:
                            raise GraphError(f"edge set is not a forest (edge {eid})")
                        continue
                    seen[y] = True
                    parent[y] = x
                    pedge[y] = eid
                    queue.append(y)
        return cls(root, tuple(parent), tuple(pedge))


@dataclass(frozen=True)
class RedComponent:
    vertices: frozenset[int]
    edge_count: int
    id: int  # smallest member vertex


@dataclass(frozen=True)
class Decomposition:
    graph: MultiGraph
    blue: tuple[OrientedTree, ...]
    red: frozenset[int]

    @property
    def k(self) -> int:
        return len(self.blue)

    @property
    def root(self) -> int:
        return self.blue[0].root if self.blue else 0

    @cached_property
    def red_adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.graph.n)]
        for eid in sorted(self.red):
            u, v = self.graph.edges[eid]
            adj[u].append(eid)
            adj[v].append(eid)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def red_component_index(self) -> tuple[int, ...]:
        """Maps each vertex to the id (smallest vertex) of its red component."""
        comp = [-1] * self.graph.n
        for s in range(self.graph.n):
            if comp[s] >= 0:
                continue
            comp[s] = s
            stack = [s]
            while stack:
                x = stack.pop()
                for eid in self.red_adjacency[x]:
                    y = self.graph.other(eid, x)
                    if comp[y] < 0:
                        comp[y] = s
                        stack.append(y)
        return tuple(comp)

    def with_changes(self, blue: Optional[Sequence[OrientedTree]] = None,
                     red: Optional[Iterable[int]] = None) -> "Decomposition":
        return Decomposition(
            self.graph,
            tuple(self.blue if blue is None else blue),
            self.red if red is None else frozenset(red),
        )


def red_components(dec: Decomposition) -> list[RedComponent]:
    """Red components sorted by id; isolated vertices are 0-edge components."""
    members: dict[int, list[int]] = {}
    for v, c in enumerate(dec.red_component_index):
        members.setdefault(c, []).append(v)
    counts = dict.fromkeys(members, 0)
    for eid in dec.red:
        counts[dec.red_component_index[dec.graph.edges[eid][0]]] += 1
    return [RedComponent(frozenset(vs), counts[c], c) for c, vs in sorted(members.items())]


def non_spanning_components(dec: Decomposition) -> list[int]:
    """Smallest vertex of each connected component some blue class fails to span."""
    out = []
    for comp in dec.graph.components():
        members = set(comp)
        for t in dec.blue:
            inside = sum(1 for v in comp if t.parent[v] >= 0 and t.parent[v] in members)
            if inside != len(comp) - 1:
                out.append(comp[0])
                break
    return out


def _check_vertex(t: OrientedTree, v: int) -> None:
    if not 0 <= v < t.n:
        raise GraphError(f"vertex {v} is not covered by the tree")


def is_descendant(t: OrientedTree, a: int, b: int) -> bool:
    """True iff ``b`` lies on the parent walk from ``a`` (reflexive)."""
    _check_vertex(t, a)
    _check_vertex(t, b)
    v = a
    steps = 0
    while v >= 0:
        if v == b:
            return True
        v = t.parent[v]
        steps += 1
        if steps > t.n:
            raise GraphError("parent links contain a cycle")
    return False


def tree_path(t: OrientedTree, a: int, b: int) -> list[int]:
    """Directed path from ``a`` up to its ancestor ``b``."""
    _check_vertex(t, a)
    _check_vertex(t, b)
    path = [a]
    while path[-1] != b:
        p = t.parent[path[-1]]
        if p < 0 or len(path) > t.n:
            raise GraphError(f"{a} is not a descendant of {b}")
        path.append(p)
    return path


def red_path(dec: Decomposition, a: int, b: int) -> list[int]:
    """The unique red path from ``a`` to ``b`` as a vertex list."""
    if dec.red_component_index[a] != dec.red_component_index[b]:
        raise GraphError(f"{a} and {b} lie in different red components")
    prev = {a: -1}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for eid in dec.red_adjacency[x]:
            y = dec.graph.other(eid, x)
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def red_path_edges(dec: Decomposition, path: Sequence[int]) -> list[int]:
    """Edge ids along a red vertex path."""
    out = []
    for x, y in zip(path, path[1:]):
        for eid in dec.red_adjacency[x]:
            if dec.graph.other(eid, x) == y:
                out.append(eid)
                break
        else:
            raise GraphError(f"no red edge between {x} and {y}")
    return out


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str = ""
    witness: tuple[int, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok


def _forest_cycle(graph: MultiGraph, edge_ids: Iterable[int]) -> Optional[list[int]]:
    """Return the edge ids of a cycle in ``edge_ids`` if there is one."""
    adj: dict[int, list[int]] = {}
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in sorted(edge_ids):
        u, v = graph.edges[eid]
        ru, rv = find(u), find(v)
        if ru == rv:
            # recover the path u -> v among the edges added so far
            prev = {u: (-1, -1)}
            queue = deque([u])
            while queue:
                x = queue.popleft()
                for f in adj.get(x, ()):
                    y = graph.other(f, x)
                    if y not in prev:
                        prev[y] = (x, f)
                        queue.append(y)
            cyc = [eid]
            x = v
            while x != u:
                x, f = prev[x]
                cyc.append(f)
            return sorted(cyc)
        parent[ru] = rv
        adj.setdefault(u, []).append(eid)
        adj.setdefault(v, []).append(eid)
    return None


def validate(dec: Decomposition, *, require_spanning: bool = True,
             bound: Optional[int] = None) -> ValidationReport:
    """Check every structural invariant of a decomposition.

    With ``require_spanning=False`` the blue parts may be spanning forests
    (used for merged outputs of disconnected or non-packable inputs).
    ``bound`` additionally limits the edge count of each red component.
    """
    g = dec.graph
    owner: dict[int, str] = {}
    for i, t in enumerate(dec.blue):
        if t.n != g.n:
            return ValidationReport(False, f"blue tree {i} has wrong vertex count")
        for v, (p, eid) in enumerate(zip(t.parent, t.parent_edge)):
            if (p < 0) != (eid < 0):
                return ValidationReport(False, f"blue tree {i} has inconsistent parent link", (v,))
            if p < 0:
                continue
            if not 0 <= eid < g.m or set(g.edges[eid]) != {v, p}:
                return ValidationReport(False, f"blue tree {i} uses edge {eid} between wrong endpoints", (v, p))
            if eid in owner:
                return ValidationReport(False, "not a partition", (eid,))
            owner[eid] = f"blue{i}"
        if t._has_cycle():
            return ValidationReport(False, f"blue tree {i} has a directed cycle")
        if require_spanning and not t.is_spanning():
            return ValidationReport(False, f"blue tree {i} is not spanning", tuple(t.roots()))
    roots = {t.root for t in dec.blue}
    if len(roots) > 1:
        return ValidationReport(False, "blue trees do not share a root", tuple(sorted(roots)))
    for eid in sorted(dec.red):
        if not 0 <= eid < g.m:
            return ValidationReport(False, "red edge id out of range", (eid,))
        if eid in owner:
            return ValidationReport(False, "not a partition", (eid,))
        owner[eid] = "red"
    missing = [e for e in range(g.m) if e not in owner]
    if missing:
        return ValidationReport(False, "not a partition", (missing[0],))
    cyc = _forest_cycle(g, dec.red)
    if cyc is not None:
        return ValidationReport(False, "red not a forest", tuple(cyc))
    if bound is not None:
        for comp in red_components(dec):
            if comp.edge_count > bound:
                return ValidationReport(False, "red component exceeds bound", tuple(sorted(comp.vertices)))
    return ValidationReport(True)


# --- text format -----------------------------------------------------------

class GraphFormatError(GraphError):
    pass


def parse_graph_text(text: str) -> tuple[MultiGraph, Optional[list[list[int]]]]:
    """Parse the ``n m`` / edge-list format with optional ``rotations`` section."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("empty input")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise GraphFormatError("first line must be 'n m'") from None
    if len(lines) < 1 + m:
        raise GraphFormatError(f"expected {m} edge lines")
    edges = []
    for i in range(m):
        parts = lines[1 + i].split()
        if len(parts) != 2:
            raise GraphFormatError(f"edge line {i + 1} must have two integers")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"edge line {i + 1} must have two integers") from None
    try:
        graph = MultiGraph(n, tuple(edges))
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from None
    rest = lines[1 + m:]
    if not rest:
        return graph, None
    if rest[0] != "rotations":
        raise GraphFormatError(f"unexpected content after edges: {rest[0]!r}")
    rotation: list[Optional[list[int]]] = [None] * n
    for ln in rest[1:]:
        head, sep, tail = ln.partition(":")
        if not sep:
            raise GraphFormatError(f"rotation line must look like 'v: e1 e2 ...': {ln!r}")
        try:
            v = int(head)
            order = [int(x) for x in tail.split()]
        except ValueError:
            raise GraphFormatError(f"bad rotation line {ln!r}") from None
        if not 0 <= v < n or rotation[v] is not None:
            raise GraphFormatError(f"bad or repeated rotation vertex {v}")
        rotation[v] = order
    if any(r is None for r in rotation):
        raise GraphFormatError("rotation missing for some vertex")
    return graph, rotation  # type: ignore[return-value]


def format_graph_text(graph: MultiGraph, rotation: Optional[Sequence[Sequence[int]]] = None) -> str:
    out = [f"{graph.n} {graph.m}"]
    out += [f"{u} {v}" for u, v in graph.edges]
    if rotation is not None:
        out.append("rotations")
        out += [f"{v}: " + " ".join(str(e) for e in rot) for v, rot in enumerate(rotation)]
    return "\n".join(out) + "\n"
