"""From an IEL formula to an LPV realization of its Gödel translation."""

from __future__ import annotations

from dataclasses import dataclass

from ..formula import Formula, Language, in_language
from ..hilbert.schemas import SystemId, system_id
from ..sequent.core import Sequent, SequentSystem
from ..sequent.prover import Outcome, ProveResult, prove
from ..syntax import LanguageError
from ..translate import godel_tr
from .realizer import RealizationResult, realize


@dataclass
class NotProved:
    outcome: Outcome
    nodes: int
    translation: Formula


def matching_sequent_system(system: SystemId | str) -> SequentSystem:
    system = system_id(system)
    if system in (SystemId.IEL_MINUS, SystemId.S4V_MINUS, SystemId.LPV_MINUS):
        return SequentSystem.S4V_MINUS_G
    if system in (SystemId.IEL, SystemId.S4V, SystemId.LPV):
        return SequentSystem.S4V_G
    raise ValueError(f"no sequent system matches {system.value}")


def realize_iel(
    f: Formula,
    system: SystemId | str = SystemId.IEL,
    max_depth: int = 50,
    max_nodes: int = 200_000,
    mode: str = "rule",
) -> RealizationResult | NotProved:
    """Translate, prove the translation, realize the derivation."""
    if not in_language(f, Language.IEL):
        raise LanguageError("realize_iel expects an IEL formula")
    seq_system = matching_sequent_system(system)
    tr = godel_tr(f)
    res: ProveResult = prove(Sequent((), (tr,)), seq_system, max_depth=max_depth, max_nodes=max_nodes)
    if not res.proved:
        return NotProved(res.outcome, res.nodes, tr)
    return realize(res.derivation, seq_system, mode=mode)
