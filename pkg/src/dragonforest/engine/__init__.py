"""Reconfiguration engine for k spanning trees plus a bounded red forest."""

from .exchange import (ExchangeError, PairClass, can_exchange, check_pair_class, classify_pair,
                       perform_exchange)
from .runner import (EngineInvariantError, RunResult, StepResult, TraceEntry, hypothesis_holds, improve,
                     make_certificate, run, step)
from .special import AugmentError, SpecialPath, apply_special_path, find_minimal_special_path
from .structures import (DensityCertificate, ExplorationSubgraph, LegalOrder, Potential, ResidueVector,
                         children, choose_root, exploration_subgraph, minimal_legal_order, potential,
                         reroot)

__all__ = [
    "AugmentError", "DensityCertificate", "EngineInvariantError", "ExchangeError", "ExplorationSubgraph",
    "LegalOrder", "PairClass", "Potential", "ResidueVector", "RunResult", "SpecialPath", "StepResult",
    "TraceEntry", "apply_special_path", "can_exchange", "check_pair_class", "children", "choose_root",
    "classify_pair", "exploration_subgraph", "find_minimal_special_path", "hypothesis_holds", "improve",
    "make_certificate", "minimal_legal_order", "perform_exchange", "potential", "reroot", "run", "step",
]
