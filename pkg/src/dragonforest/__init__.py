"""Forest decompositions with a bounded-component forest, and thin trees of planar graphs."""

from .graph import Decomposition, MultiGraph, OrientedTree, RedComponent, validate

__all__ = ["Decomposition", "MultiGraph", "OrientedTree", "RedComponent", "validate"]
