"""Swapping a blue tree edge for a red edge, and the three-way pair classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..graph import Decomposition, GraphError, OrientedTree, is_descendant, red_path, red_path_edges, tree_path


class ExchangeError(GraphError):
    pass


def can_exchange(t: OrientedTree, u: int, graph, eid: int) -> bool:
    """True iff ``eid`` has exactly one endpoint below ``u`` (and ``u`` is not the root)."""
    if t.parent[u] < 0:
        return False
    a, b = graph.edges[eid]
    return is_descendant(t, a, u) != is_descendant(t, b, u)


def exchange_tree(t: OrientedTree, u: int, graph, eid: int) -> OrientedTree:
    """``t + eid - (u, parent(u))`` re-oriented to the same root.

    Only the path from the lower endpoint of ``eid`` up to ``u`` flips.
    """
    if not can_exchange(t, u, graph, eid):
        raise ExchangeError(f"edge {eid} does not cross the subtree of {u}")
    a, b = graph.edges[eid]
    v, w = (a, b) if is_descendant(t, a, u) else (b, a)
    path = tree_path(t, v, u)
    parent = list(t.parent)
    pedge = list(t.parent_edge)
    for lower, upper in zip(path, path[1:]):
        parent[upper] = lower
        pedge[upper] = t.parent_edge[lower]
    parent[v] = w
    pedge[v] = eid
    return OrientedTree(t.root, tuple(parent), tuple(pedge))


def perform_exchange(dec: Decomposition, tree: int, u: int, eid: int) -> Decomposition:
    """Move ``(u, parent(u))`` from blue tree ``tree`` to red and ``eid`` from red to blue."""
    if eid not in dec.red:
        raise ExchangeError(f"edge {eid} is not red")
    t = dec.blue[tree]
    removed = t.parent_edge[u]
    up = t.parent[u]
    index = dec.red_component_index
    if up >= 0 and index[u] == index[up] and eid not in red_path_edges(dec, red_path(dec, u, up)):
        raise ExchangeError(f"edge {removed} would close a red cycle")
    new_t = exchange_tree(t, u, dec.graph, eid)
    blue = list(dec.blue)
    blue[tree] = new_t
    red = (dec.red - {eid}) | {removed}
    return dec.with_changes(blue=blue, red=red)


@dataclass(frozen=True)
class PairClass:
    """How two same-component vertices interact in one blue tree.

    ``case`` is 1, 2 or 3.  ``first`` is the red edge the tree edge at ``x``
    can swap with; ``second`` (case 1 only) is the one for ``y``.  Edges are
    given as ordered vertex pairs along the red path from ``x`` to ``y``.
    """

    case: int
    first: tuple[int, int]
    second: Optional[tuple[int, int]]
    first_edge: int
    second_edge: Optional[int]


def classify_pair(dec: Decomposition, tree: int, x: int, y: int) -> PairClass:
    """Classify ``x, y`` (same red component, ``y`` not below ``x``)."""
    t = dec.blue[tree]
    if is_descendant(t, y, x):
        raise ExchangeError("y must not be a descendant of x")
    path = red_path(dec, x, y)
    edges = red_path_edges(dec, path)
    below_x = [is_descendant(t, p, x) for p in path]
    below_y = [is_descendant(t, p, y) for p in path]
    ix = [j for j in range(len(edges)) if below_x[j] != below_x[j + 1]]
    iy = [j for j in range(len(edges)) if below_y[j] != below_y[j + 1]]
    x_below_y = is_descendant(t, x, y)

    def single(case: int, j: int) -> PairClass:
        return PairClass(case, (path[j], path[j + 1]), None, edges[j], None)

    if not ix:
        raise ExchangeError("no red edge leaves the subtree of x")
    if not iy:
        return single(2, ix[-1])
    j = iy[-1]
    later = [jj for jj in ix if jj > j] if x_below_y else []
    if later:
        return single(2, later[-1])
    i = ix[0]
    if i < j:
        return PairClass(1, (path[i], path[i + 1]), (path[j], path[j + 1]), edges[i], edges[j])
    if i == j:
        return single(2 if x_below_y else 3, i)
    raise ExchangeError("inconsistent tree and red path")


def _on_path(t: OrientedTree, a: int, via: int, top: int) -> bool:
    """True iff ``via`` lies on the tree path from ``a`` up to its ancestor ``top``."""
    return is_descendant(t, a, via) and is_descendant(t, via, top)


def _path_edges(t: OrientedTree, a: int, b: int) -> set[int]:
    return {t.parent_edge[v] for v in tree_path(t, a, b)[:-1]}


def check_pair_class(dec: Decomposition, tree: int, x: int, y: int, pc: PairClass) -> None:
    """Assert every defining property of ``pc`` by direct inspection."""
    t = dec.blue[tree]
    g = dec.graph
    path = red_path(dec, x, y)
    i = path.index(pc.first[0])
    assert path[i + 1] == pc.first[1], "first edge is not on the red path"
    assert can_exchange(t, x, g, pc.first_edge), "x cannot swap with its edge"
    xp, yp = t.parent[x], t.parent[y]
    if pc.case in (1, 3):
        for a in path[: i + 1]:
            assert is_descendant(t, a, x) and not _on_path(t, a, y, x)
    if pc.case == 1:
        j = path.index(pc.second[0])
        assert i < j and path[j + 1] == pc.second[1]
        assert can_exchange(t, y, g, pc.second_edge), "y cannot swap with its edge"
        for a in path[j + 1:]:
            assert is_descendant(t, a, y) and not _on_path(t, a, x, y)
        assert not _path_edges(t, path[i], xp) & _path_edges(t, path[j + 1], yp)
        return
    for a in path[i + 1:]:
        assert is_descendant(t, a, y) and not _on_path(t, a, x, y)
    assert not _path_edges(t, path[i], xp) & _path_edges(t, path[i + 1], yp)
    if pc.case == 2:
        assert is_descendant(t, x, y) and is_descendant(t, path[i], x)
    else:
        assert pc.case == 3
        assert not is_descendant(t, x, y) and not is_descendant(t, y, x)
        assert can_exchange(t, y, g, pc.first_edge), "case 3 edge must also suit y"
