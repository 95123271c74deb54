"""Sequent calculi S4V-g and S4Vg: checking and proof search."""

from .core import (
    L,
    R,
    DerivationVerdict,
    RuleError,
    RuleId,
    RuleVerdict,
    Sequent,
    SequentSystem,
    SNode,
    check_derivation,
    check_rule_application,
    height,
    nodes_of,
    sequent_system,
    tree_size,
    weaken_to,
)
from .prover import Outcome, ProveResult, identity_derivation, prove, prove_formula
from .trim import trim

__all__ = [
    "L", "R", "DerivationVerdict", "Outcome", "ProveResult", "RuleError", "RuleId", "RuleVerdict",
    "SNode", "Sequent", "SequentSystem", "check_derivation", "check_rule_application", "height",
    "identity_derivation", "nodes_of", "prove", "prove_formula", "sequent_system", "tree_size",
    "trim", "weaken_to",
]
