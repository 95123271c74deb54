"""Hilbert systems: schemas, line derivations, checking and proof transforms."""

from .deduction import DeductionError, deduction
from .derivation import (
    AxNec,
    Axiom,
    BoxNec,
    CheckResult,
    ConstantSpecification,
    CSRef,
    Hyp,
    Line,
    MP,
    ax_nec,
    axiom,
    box_nec,
    check_derivation,
    cs_line,
    hyp,
    mp,
    open_hypotheses,
    validate_cs,
)
from .internalize import ConstantPool, Internalized, internalize, v_lift
from .proof import Proof, ProofError, from_derivation, linearize
from .schemas import SCHEMAS, SYSTEM_SCHEMAS, SystemId, match_axiom, matching_schemas, system_id
from .tableau import NotATautology, derive

__all__ = [
    "AxNec", "Axiom", "BoxNec", "CSRef", "CheckResult", "ConstantPool", "ConstantSpecification",
    "DeductionError", "Hyp", "Internalized", "Line", "MP", "NotATautology", "Proof", "ProofError",
    "SCHEMAS", "SYSTEM_SCHEMAS", "SystemId", "ax_nec", "axiom", "box_nec", "check_derivation",
    "cs_line", "deduction", "derive", "from_derivation", "hyp", "internalize", "linearize",
    "match_axiom", "matching_schemas", "mp", "open_hypotheses", "system_id", "v_lift", "validate_cs",
]
