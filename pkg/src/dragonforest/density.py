"""Exact fractional arboricity and the density thresholds for bounded forest decompositions.

All quantities are :class:`fractions.Fraction`; nothing here touches floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .flow import FlowNetwork
from .graph import MultiGraph


class ParameterError(ValueError):
    """Raised when (k, d) lies outside the supported range."""


def _best_set_through(g: MultiGraph, p: int, q: int, forced: int) -> tuple[int, set[int]]:
    """Maximise ``q*e(S) - p*|S|`` over vertex sets containing ``forced``.

    Max-closure on the edge/vertex incidence network: source -> edge node (q),
    edge node -> its endpoints (inf), vertex -> sink (p).  The forced vertex
    pays ``p`` unconditionally.
    """
    m, n = g.m, g.n
    src, snk = m + n, m + n + 1
    net = FlowNetwork(m + n + 2)
    inf = q * m + p * n + 1
    for eid, (u, v) in enumerate(g.edges):
        net.add_edge(src, eid, q)
        net.add_edge(eid, m + u, inf)
        net.add_edge(eid, m + v, inf)
    for v in range(n):
        if v != forced:
            net.add_edge(m + v, snk, p)
    cut = net.max_flow(src, snk)
    side = net.source_side(src)
    chosen = {x - m for x in side if m <= x < m + n}
    chosen.add(forced)
    return q * m - cut - p, chosen


def densest_subgraph_witness(g: MultiGraph, threshold: Fraction, *, strict: bool = True) -> Optional[frozenset[int]]:
    """A vertex set S with ``e(G[S]) > threshold * (|S| - 1)``, or ``None``.

    With ``strict=False`` the comparison is ``>=`` (and ``|S| >= 2`` is
    required).
    """
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    if g.n < 2 or g.m == 0:
        return None
    if not strict:
        # e/(s-1) >= t  <=>  e/(s-1) > t - eps for eps below the gap between
        # distinct fractions with denominator <= n-1.
        eps = Fraction(1, 2 * (g.n - 1) ** 2 * threshold.denominator)
        return densest_subgraph_witness(g, threshold - eps) if threshold - eps > 0 else _any_edge(g)
    p, q = threshold.numerator, threshold.denominator
    for v in range(g.n):
        value, chosen = _best_set_through(g, p, q, v)
        # q e(S) - p |S| > -p  <=>  e(S) > t (|S| - 1)
        if value > -p:
            return frozenset(chosen)
    return None


def _any_edge(g: MultiGraph) -> Optional[frozenset[int]]:
    return frozenset(g.edges[0]) if g.m else None


def density_of(g: MultiGraph, vertices) -> Fraction:
    s = set(vertices)
    if len(s) < 2:
        return Fraction(0)
    return Fraction(g.edges_within(s), len(s) - 1)


def fractional_arboricity(g: MultiGraph) -> Fraction:
    """``max e(H)/(v(H)-1)`` over subgraphs with at least two vertices.

    Stern-Brocot descent: the answer has denominator at most ``n-1``, and each
    visited mediant is compared against it with one witness query.
    """
    if g.n < 2 or g.m == 0:
        return Fraction(0)
    max_den = g.n - 1
    lo_num, lo_den = 0, 1
    hi_num, hi_den = 1, 0
    while True:
        num, den = lo_num + hi_num, lo_den + hi_den
        med = Fraction(num, den)
        if densest_subgraph_witness(g, med) is not None:
            lo_num, lo_den = num, den
            continue
        if den <= max_den and densest_subgraph_witness(g, med, strict=False) is not None:
            return med
        hi_num, hi_den = num, den


def chi(k: int, d: int) -> Fraction:
    """Red-density allowance on top of ``k``: the bound is ``gamma <= k + chi``."""
    if k < 1 or d < 1:
        raise ParameterError("k and d must be positive")
    if d <= k + 1:
        return Fraction(d, d + k + 1)
    if d < 3 * (k + 1):
        return Fraction(d + k, d + 3 * k + 1)
    raise ParameterError(f"d={d} must be below 3(k+1)={3 * (k + 1)}")


def component_bound(k: int, d: int) -> int:
    """Largest red component size guaranteed for the user-facing ``(k, d)``."""
    if k < 1 or not 1 <= d <= 2 * (k + 1):
        raise ParameterError(f"need k >= 1 and 1 <= d <= 2(k+1), got k={k}, d={d}")
    if d <= k + 1:
        return d
    return d + math.ceil(Fraction(k * d, k + 1)) - k


def is_small(edge_count: int, k: int, d: int) -> bool:
    if d <= k + 1:
        return edge_count == 0
    if d < 3 * (k + 1):
        return edge_count <= 1
    raise ParameterError(f"d={d} must be below 3(k+1)")
