"""Candidate modifications, one generator per family.

Every generator yields ``Move`` objects lazily; the runner applies each
candidate to a copy and keeps the first whose potential is strictly smaller.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Optional

from ..density import is_small
from ..graph import Decomposition, GraphError, is_descendant, red_path, red_path_edges
from .exchange import ExchangeError, can_exchange, check_pair_class, classify_pair, perform_exchange
from .special import (AugmentError, apply_special_path, augment, blue_predecessors,
                      candidate_paths, find_minimal_special_path)
from .structures import Child, LegalOrder, children, minimal_legal_order


@dataclass(frozen=True)
class Move:
    family: str
    mechanism: str
    edges: tuple[int, ...]
    build: Callable[[], Optional[Decomposition]] = field(compare=False, repr=False)


@dataclass
class MoveContext:
    dec: Decomposition
    order: LegalOrder
    r: int
    k: int
    d: int
    debug: bool = False

    def small(self, comp) -> bool:
        return is_small(comp.edge_count, self.k, self.d)


def _safe(fn: Callable[[], Optional[Decomposition]]) -> Callable[[], Optional[Decomposition]]:
    def run() -> Optional[Decomposition]:
        try:
            return fn()
        except (AugmentError, ExchangeError):
            return None
    return run


# --- follow-up augmentation --------------------------------------------------

def follow_up(ctx: MoveContext, s: Decomposition, tree: int, a: int, limit_index: int) -> Iterator[Decomposition]:
    """Turn the blue edge at ``a`` (tree ``tree``) red again inside ``s``.

    Tries the minimal special path of fresh legal orders of ``s`` first, then
    generic paths from vertices that were early in the old order.
    """
    head = s.blue[tree].parent[a]
    if head < 0:
        return
    tried = set()
    prefixes = [(), tuple(c.vertices for c in ctx.order.components[:limit_index])]
    for prefix in prefixes:
        order = minimal_legal_order(s, ctx.r, prefix)
        ia, ih = order.index(a), order.index(head)
        if ia is None or ih is None or ih <= ia:
            continue
        try:
            sp = find_minimal_special_path(s, order, tree, a)
            if sp in tried:
                continue
            tried.add(sp)
            yield apply_special_path(s, order, sp)
        except AugmentError:
            continue
    old = ctx.order
    inf = len(old.components) + 1
    starts = [v for v in blue_predecessors(s, a) if (old.index(v) or inf) <= limit_index]
    starts.sort(key=lambda v: (old.index(v) or inf, old.aux_depth.get(v, 0), v))
    for sp in candidate_paths(s, tree, a, starts):
        if sp in tried:
            continue
        tried.add(sp)
        out = augment(s, sp)
        if out is not None:
            yield out


def _then_follow(ctx: MoveContext, first: Callable[[], Decomposition], tree: int, a: int,
                 limit_index: int) -> Iterator[Callable[[], Optional[Decomposition]]]:
    """Builders for ``first`` followed by each follow-up augmentation."""
    try:
        s = first()
    except (AugmentError, ExchangeError, GraphError):
        return
    for out in follow_up(ctx, s, tree, a, limit_index):
        yield lambda out=out: out


# --- families ------------------------------------------------------------------

def merge_moves(ctx: MoveContext, strict: bool = True) -> Iterator[Move]:
    """Recolour a blue edge into a later small-enough component via a special path."""
    dec, order = ctx.dec, ctx.order
    for comp in order.components:
        for ch in children(dec, order, comp):
            if strict and comp.edge_count + ch.component.edge_count + 1 > ctx.d:
                continue

            def build(ch=ch) -> Decomposition:
                sp = find_minimal_special_path(dec, order, ch.tree, ch.tail)
                return apply_special_path(dec, order, sp)
            yield Move("merge" if strict else "merge-any", "special-path", (ch.edge,), _safe(build))


def root_child_moves(ctx: MoveContext) -> Iterator[Move]:
    """A small child of the root component: swap its edge into the root's red path."""
    dec, order = ctx.dec, ctx.order
    root_comp = order.components[0]
    for ch in children(dec, order, root_comp):
        if not ctx.small(ch.component):
            continue
        t = dec.blue[ch.tree]
        path = red_path(dec, ch.tail, ctx.r)
        for j, v in enumerate(path):
            if not is_descendant(t, v, ch.tail):
                break
        else:
            continue
        eid = red_path_edges(dec, path[j - 1: j + 1])[0]
        yield Move("root-child", "root-no-small-children", (ch.edge, eid),
                   _safe(lambda ch=ch, eid=eid: perform_exchange(dec, ch.tree, ch.tail, eid)))


def _small_children_by_tree(ctx: MoveContext, comp) -> dict[int, list[Child]]:
    out: dict[int, list[Child]] = {}
    for ch in children(ctx.dec, ctx.order, comp):
        if ctx.small(ch.component):
            out.setdefault(ch.tree, []).append(ch)
    return out


def pair_moves(ctx: MoveContext) -> Iterator[Move]:
    """Two small children generated by the same tree."""
    dec, order = ctx.dec, ctx.order
    for idx, comp in enumerate(order.components, start=1):
        for tree, chs in sorted(_small_children_by_tree(ctx, comp).items()):
            t = dec.blue[tree]
            for c1, c2 in combinations(chs, 2):
                if c1.component.id == c2.component.id or c1.tail == c2.tail:
                    continue
                if ctx.r in (c1.tail, c2.tail):
                    continue
                cx, cy = (c2, c1) if is_descendant(t, c1.tail, c2.tail) else (c1, c2)
                try:
                    pc = classify_pair(dec, tree, cx.tail, cy.tail)
                except ExchangeError:
                    continue
                if ctx.debug:
                    check_pair_class(dec, tree, cx.tail, cy.tail, pc)
                yield from _pair_candidates(ctx, idx, tree, cx, cy, pc)


def _pair_candidates(ctx: MoveContext, idx: int, tree: int, cx: Child, cy: Child, pc) -> Iterator[Move]:
    dec = ctx.dec
    tag = f"pair-case{pc.case}"
    options = [(cx, pc.first_edge, cy)]
    if pc.case == 3:
        options.append((cy, pc.first_edge, cx))
    if pc.case == 1:
        options.append((cy, pc.second_edge, cx))
    for swap, eid, other in options:
        def first(swap=swap, eid=eid) -> Decomposition:
            return perform_exchange(dec, tree, swap.tail, eid)
        yield Move(tag, "single-swap", (swap.edge, eid), _safe(first))
        for build in _then_follow(ctx, first, tree, other.tail, idx):
            yield Move(tag, "swap-then-augment", (swap.edge, eid, other.edge), build)


def path_edge_moves(ctx: MoveContext) -> Iterator[Move]:
    """Swap a generating edge with a red edge at its own tail (larger bound only)."""
    if ctx.d <= ctx.k + 1:
        return
    dec, order = ctx.dec, ctx.order
    for idx, comp in enumerate(order.components, start=1):
        if idx == 1:
            continue
        for ch in children(dec, order, comp):
            if not ctx.small(ch.component):
                continue
            x = ch.tail
            t = dec.blue[ch.tree]
            for eid in dec.red_adjacency[x]:
                y = dec.graph.other(eid, x)
                if is_descendant(t, y, x):
                    continue
                yield Move("tail-edge", "tail-swap", (ch.edge, eid),
                           _safe(lambda ch=ch, eid=eid: perform_exchange(dec, ch.tree, ch.tail, eid)))


def triple_moves(ctx: MoveContext) -> Iterator[Move]:
    """Three small children of one tree chained by two case-2 relations."""
    if ctx.d <= ctx.k + 1:
        return
    dec, order = ctx.dec, ctx.order
    for idx, comp in enumerate(order.components, start=1):
        if comp.edge_count < 3:
            continue
        for tree, chs in sorted(_small_children_by_tree(ctx, comp).items()):
            t = dec.blue[tree]
            tails = {}
            for ch in chs:
                tails.setdefault(ch.tail, ch)
            uniq = [c for c in tails.values()]
            for cx in uniq:
                for cy in uniq:
                    for cz in uniq:
                        if len({cx.tail, cy.tail, cz.tail}) < 3:
                            continue
                        if len({cx.component.id, cy.component.id, cz.component.id}) < 3:
                            continue
                        yield from _triple(ctx, idx, tree, t, cx, cy, cz)


def _triple(ctx: MoveContext, idx: int, tree: int, t, cx: Child, cy: Child, cz: Child) -> Iterator[Move]:
    dec = ctx.dec
    if is_descendant(t, cy.tail, cx.tail) or is_descendant(t, cz.tail, cy.tail):
        return
    try:
        p1 = classify_pair(dec, tree, cx.tail, cy.tail)
        p2 = classify_pair(dec, tree, cy.tail, cz.tail)
    except ExchangeError:
        return
    if p1.case != 2 or p2.case != 2 or p1.first[1] != cy.tail or p2.first[1] != cz.tail:
        return

    def first() -> Decomposition:
        s = perform_exchange(dec, tree, cx.tail, p1.first_edge)
        return perform_exchange(s, tree, cy.tail, p2.first_edge)
    yield Move("triple", "double-swap", (cx.edge, p1.first_edge, cy.edge, p2.first_edge), _safe(first))
    for build in _then_follow(ctx, first, tree, cz.tail, idx):
        yield Move("triple", "double-swap-then-augment",
                   (cx.edge, p1.first_edge, cy.edge, p2.first_edge, cz.edge), build)


def any_swap_moves(ctx: MoveContext) -> Iterator[Move]:
    """Fallback: every legal single swap between a blue tree edge and a red edge of the region."""
    dec, order = ctx.dec, ctx.order
    g = dec.graph
    for eid in sorted(e for e in dec.red if g.edges[e][0] in order.position):
        for tree, t in enumerate(dec.blue):
            a, b = g.edges[eid]
            pa, pb = t.path_to_root(a), t.path_to_root(b)
            common = set(pa) & set(pb)
            for u in [v for v in pa if v not in common] + [v for v in pb if v not in common]:
                yield Move("any-swap", "fallback", (t.parent_edge[u], eid),
                           _safe(lambda tree=tree, u=u, eid=eid: perform_exchange(dec, tree, u, eid)))


def any_swap_then_augment_moves(ctx: MoveContext) -> Iterator[Move]:
    """Fallback: a swap at a small child's edge followed by augmenting another one."""
    dec, order = ctx.dec, ctx.order
    for idx, comp in enumerate(order.components, start=1):
        for tree, chs in sorted(_small_children_by_tree(ctx, comp).items()):
            t = dec.blue[tree]
            for cx in chs:
                for eid in sorted(e for v in comp.vertices for e in dec.red_adjacency[v]):
                    if not can_exchange(t, cx.tail, dec.graph, eid):
                        continue

                    def first(cx=cx, eid=eid) -> Decomposition:
                        return perform_exchange(dec, tree, cx.tail, eid)
                    for cy in chs:
                        if cy.tail == cx.tail:
                            continue
                        for build in _then_follow(ctx, first, tree, cy.tail, idx):
                            yield Move("any-swap-augment", "fallback", (cx.edge, eid, cy.edge), build)


PRIMARY = (merge_moves, root_child_moves, pair_moves, path_edge_moves, triple_moves)
FALLBACK = (lambda ctx: merge_moves(ctx, strict=False), any_swap_moves, any_swap_then_augment_moves)
