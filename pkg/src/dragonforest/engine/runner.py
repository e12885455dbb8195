"""The reconfiguration loop: pick the worst red component and reduce it move by move."""

from __future__ import annotations

import os
import sys
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..density import chi, fractional_arboricity, is_small
from ..graph import (Decomposition, DisconnectedInputError, MultiGraph, OrientedTree,
                     non_spanning_components, red_components, validate)
from ..packing import ReductionNeeded, spanning_trees_plus_forest
from .moves import FALLBACK, PRIMARY, Move, MoveContext
from .structures import (DensityCertificate, LegalOrder, Potential, ResidueVector, children, choose_root,
                         exploration_subgraph, minimal_legal_order, reroot)


class EngineInvariantError(AssertionError):
    pass


@dataclass(frozen=True)
class TraceEntry:
    step: int
    family: str
    mechanism: str
    edges: tuple[int, ...]
    before: Potential
    after: Potential

    def line(self) -> str:
        return (f"move {self.step} {self.family}/{self.mechanism} edges={list(self.edges)} "
                f"before={self.before.describe()} after={self.after.describe()}")


@dataclass(frozen=True)
class StepResult:
    move: Move
    decomposition: Decomposition
    before: Potential
    after: Potential

    @property
    def rho_dropped(self) -> bool:
        return self.after.rho.counts < self.before.rho.counts


@dataclass
class RunResult:
    decomposition: Decomposition
    k: int
    d: int
    certificate: Optional[DensityCertificate] = None
    trace: list[TraceEntry] = field(default_factory=list)
    move_counts: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return self.certificate is None

    @property
    def max_red_component_edges(self) -> int:
        return max((c.edge_count for c in red_components(self.decomposition)), default=0)

    def to_json(self) -> dict:
        dec = self.decomposition
        return {
            "k": self.k,
            "d": self.d,
            "root": dec.root,
            "blue": [sorted(t.edge_ids()) for t in dec.blue],
            "red": sorted(dec.red),
            "orientations": sorted([v, p, e] for t in dec.blue for v, p, e in t.directed_edges()),
            "max_red_component_edges": self.max_red_component_edges,
            "non_spanning": non_spanning_components(dec),
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }


def _tracing() -> bool:
    return os.environ.get("DRAGONFOREST_TRACE") == "1"


def potential_of(dec: Decomposition, r: int, d: int) -> tuple[Potential, LegalOrder]:
    order = minimal_legal_order(dec, r)
    return Potential(ResidueVector.of(dec, d), order.sizes), order


def _accepts(before: Potential, after: Potential, old_root_comp: frozenset[int],
             new: Decomposition, r: int) -> bool:
    if after.rho.counts < before.rho.counts:
        return True
    if after.rho.counts != before.rho.counts:
        return False
    index = new.red_component_index
    same_root_comp = frozenset(v for v in range(new.graph.n) if index[v] == index[r]) == old_root_comp
    return same_root_comp and after < before


def step(dec: Decomposition, r: int, k: int, d: int, *, debug: bool = False,
         fallback: bool = True) -> Optional[StepResult]:
    """Return the first candidate move that strictly lowers the potential."""
    before, order = potential_of(dec, r, d)
    ctx = MoveContext(dec, order, r, k, d, debug)
    root_comp = order.components[0].vertices
    families = PRIMARY + (FALLBACK if fallback else ())
    for family in families:
        for move in family(ctx):
            new = move.build()
            if new is None:
                continue
            after, _ = potential_of(new, r, d)
            if _accepts(before, after, root_comp, new, r):
                if debug:
                    report = validate(new)
                    if not report:
                        raise EngineInvariantError(f"{move.family} produced invalid state: {report.reason}")
                return StepResult(move, new, before, after)
    return None


def _state_key(dec: Decomposition) -> tuple:
    return (dec.red, tuple(t.parent_edge for t in dec.blue), tuple(t.parent for t in dec.blue))


def check_regularity(dec: Decomposition, r: int) -> None:
    """Every non-root vertex of the explored region keeps all blue out-edges inside it."""
    h = exploration_subgraph(dec, r)
    for v in h.vertices:
        if v != r and h.blue_out_degree(dec, v) != dec.k:
            raise EngineInvariantError(f"vertex {v} lacks blue out-edges inside the explored region")


def small_children_tally(dec: Decomposition, order: LegalOrder, k: int, d: int) -> dict:
    """Per component id: per tree, (small children, isolated-vertex children, <=1-edge children)."""
    out = {}
    for comp in order.components:
        per_tree = {}
        for i in range(dec.k):
            seen: dict[int, int] = {}
            for ch in children(dec, order, comp):
                if ch.tree == i and is_small(ch.component.edge_count, k, d):
                    seen[ch.component.id] = ch.component.edge_count
            per_tree[i] = (len(seen), sum(1 for e in seen.values() if e == 0),
                           sum(1 for e in seen.values() if e <= 1))
        out[comp.id] = per_tree
    return out


def make_certificate(dec: Decomposition, r: int, k: int, d: int) -> DensityCertificate:
    h = exploration_subgraph(dec, r)
    order = minimal_legal_order(dec, r)
    density = Fraction(len(h.red_edges), max(1, len(h.vertices) - 1))
    return DensityCertificate(h.vertices, len(h.red_edges), density, dec, small_children_tally(dec, order, k, d))


def check_stuck_structure(dec: Decomposition, r: int, k: int, d: int, cert: DensityCertificate) -> None:
    """Structural facts that must hold when no move lowers the potential."""
    order = minimal_legal_order(dec, r)
    for comp in order.components:
        tally = cert.small_children[comp.id]
        if is_small(comp.edge_count, k, d) and any(t[0] for t in tally.values()):
            raise EngineInvariantError(f"small component {comp.id} has a small child")
        for i, (_, isolated, tiny) in tally.items():
            if isolated > 1:
                raise EngineInvariantError(f"component {comp.id} has {isolated} isolated children in tree {i}")
            if tiny > 2:
                raise EngineInvariantError(f"component {comp.id} has {tiny} small children in tree {i}")
    if cert.density <= chi(k, d):
        raise EngineInvariantError(f"certificate density {cert.density} does not exceed {chi(k, d)}")


def improve(dec: Decomposition, k: int, d: int, *, debug: bool = False,
            result: Optional[RunResult] = None) -> RunResult:
    """Run moves on a k-spanning-trees-plus-forest decomposition until all red parts fit."""
    if result is None:
        result = RunResult(dec, k, d)
    seen: set = set()
    trace = _tracing()
    while True:
        oversized = [c for c in red_components(dec) if c.edge_count > d]
        if not oversized:
            result.decomposition = dec
            return result
        target = max(oversized, key=lambda c: (c.edge_count, -c.id))
        r = choose_root(target, dec, k, d)
        dec = reroot(dec, r)
        while True:
            key = _state_key(dec)
            if key in seen:
                raise EngineInvariantError("decomposition state repeated")
            seen.add(key)
            if debug:
                check_regularity(dec, r)
            res = step(dec, r, k, d, debug=debug)
            if res is None:
                cert = make_certificate(dec, r, k, d)
                if debug:
                    check_stuck_structure(dec, r, k, d, cert)
                result.decomposition = dec
                result.certificate = cert
                return result
            if not res.after < res.before:
                raise EngineInvariantError("accepted move did not lower the potential")
            entry = TraceEntry(len(result.trace) + 1, res.move.family, res.move.mechanism,
                               res.move.edges, res.before, res.after)
            result.trace.append(entry)
            result.move_counts[res.move.family] += 1
            if trace:
                print(entry.line(), file=sys.stderr)
            dec = res.decomposition
            if res.rho_dropped:
                break


def _solve_parts(g: MultiGraph, shape: ReductionNeeded, k: int, d: int, debug: bool,
                 result: RunResult) -> Decomposition:
    """Improve each part separately and glue the parts back together.

    Every blue forest spans each part and all edges between parts are blue,
    so the merged blue classes stay forests and red stays inside parts.
    """
    blue_sets = [set(b) for b in shape.blue]
    red: set[int] = set(shape.red)
    owner = {e: i for i, b in enumerate(shape.blue) for e in b}
    for part in shape.parts:
        if len(part) < 2:
            continue
        sub, vmap, emap = g.induced(part)
        back = {e: j for j, e in enumerate(emap)}
        trees = []
        for i in range(k):
            local = [back[e] for e in blue_sets[i] if e in back]
            tree = OrientedTree.from_edges(sub, local, 0)
            if not tree.is_spanning():
                raise EngineInvariantError("blue forest does not span a part")
            trees.append(tree)
        local_red = frozenset(back[e] for e in red if e in back)
        sub_dec = Decomposition(sub, tuple(trees), local_red)
        sub_res = improve(sub_dec, k, d, debug=debug, result=RunResult(sub_dec, k, d))
        result.trace.extend(sub_res.trace)
        result.move_counts.update(sub_res.move_counts)
        if sub_res.certificate is not None:
            cert = sub_res.certificate
            result.certificate = DensityCertificate(
                frozenset(vmap[v] for v in cert.vertices), cert.red_edges, cert.density,
                cert.decomposition, cert.small_children)
        for e in emap:
            if e in owner:
                blue_sets[owner[e]].discard(e)
            red.discard(e)
        for j, t in enumerate(sub_res.decomposition.blue):
            for le in t.edge_ids():
                blue_sets[j].add(emap[le])
        for le in sub_res.decomposition.red:
            red.add(emap[le])
    trees = tuple(OrientedTree.from_edges(g, blue_sets[i], 0) for i in range(k))
    return Decomposition(g, trees, frozenset(red))


def run(g: MultiGraph, k: int, d: int, *, debug: bool = False) -> RunResult:
    """Split ``g`` into ``k`` blue trees and a red forest with parts of at most ``d`` edges.

    The result carries a density certificate instead when the search gets stuck.
    """
    chi(k, d)  # parameter range check
    if not g.is_connected():
        raise DisconnectedInputError("run needs a connected graph; split components first")
    shape = spanning_trees_plus_forest(g, k)
    if isinstance(shape, Decomposition):
        return improve(shape, k, d, debug=debug)
    result = RunResult(Decomposition(g, (), frozenset()), k, d)
    merged = _solve_parts(g, shape, k, d, debug, result)
    result.decomposition = merged
    report = validate(merged, require_spanning=False)
    if not report:
        raise EngineInvariantError(f"merged decomposition invalid: {report.reason}")
    return result


def hypothesis_holds(g: MultiGraph, k: int, d: int) -> bool:
    return fractional_arboricity(g) <= k + chi(k, d)
