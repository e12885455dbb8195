"""Small named graphs with rotation systems derived from convex 3D coordinates."""

from __future__ import annotations

import itertools
import math

from dragonforest.graph import MultiGraph
from dragonforest.planar import EmbeddedGraph

PHI = (1 + 5 ** 0.5) / 2


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def polyhedron(points) -> EmbeddedGraph:
    """Edges join nearest pairs; rotations sort neighbours by angle around the outward normal."""
    pts = [tuple(map(float, p)) for p in points]
    d2 = {(i, j): _dot(_sub(pts[i], pts[j]), _sub(pts[i], pts[j]))
          for i, j in itertools.combinations(range(len(pts)), 2)}
    shortest = min(d2.values())
    edges = tuple(pair for pair, v in sorted(d2.items()) if v < shortest * 1.01)
    g = MultiGraph(len(pts), edges)
    rotation = []
    for v, p in enumerate(pts):
        helper = (1.0, 0.0, 0.0) if abs(p[0]) < 0.9 * math.sqrt(_dot(p, p)) else (0.0, 1.0, 0.0)
        e1 = _cross(p, helper)
        e2 = _cross(p, e1)
        def angle(eid):
            q = pts[g.other(eid, v)]
            w = _sub(q, p)
            return math.atan2(_dot(w, e2), _dot(w, e1))
        rotation.append(tuple(sorted(g.incident[v], key=angle)))
    return EmbeddedGraph.from_lists(g, rotation)


def icosahedron() -> EmbeddedGraph:
    pts = []
    for a, b in itertools.product((-1, 1), repeat=2):
        pts += [(0, a, b * PHI), (a, b * PHI, 0), (b * PHI, 0, a)]
    return polyhedron(pts)


def cube() -> EmbeddedGraph:
    return polyhedron(list(itertools.product((-1, 1), repeat=3)))


def dodecahedron() -> EmbeddedGraph:
    pts = list(itertools.product((-1, 1), repeat=3))
    for a, b in itertools.product((-1, 1), repeat=2):
        pts += [(0, a / PHI, b * PHI), (a / PHI, b * PHI, 0), (b * PHI, 0, a / PHI)]
    return polyhedron(pts)


def petersen() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph(10, tuple(outer + spokes + inner))


def complete(n: int) -> MultiGraph:
    return MultiGraph(n, tuple(itertools.combinations(range(n), 2)))


def cycle(n: int) -> MultiGraph:
    return MultiGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> MultiGraph:
    return MultiGraph(n, tuple((i, i + 1) for i in range(n - 1)))
