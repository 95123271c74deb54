"""Gödel translation of the epistemic language and forgetful projection of the explicit one."""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    BOT,
    And,
    Atom,
    Bottom,
    Box,
    Evid,
    Formula,
    Implies,
    Know,
    Language,
    Or,
    Position,
    Ver,
    children,
    in_language,
    rebuild,
)
from .syntax import LanguageError


@dataclass(frozen=True)
class TraceStep:
    source: Position
    clause: str  # "atom", "bottom", "neg", "and", "or", "imp", "know"
    target: Position  # the Box node emitted for this source node


@dataclass(frozen=True)
class TranslationTrace:
    source: Formula
    result: Formula
    steps: tuple[TraceStep, ...]

    def replay(self) -> Formula:
        """Rebuild the result from the source using only the logged clauses."""
        clauses = {s.source: s.clause for s in self.steps}

        def go(f: Formula, pos: Position) -> Formula:
            clause = clauses[pos]
            if clause == "atom" or clause == "bottom":
                return Box(f)
            if clause == "neg":
                return Box(Implies(go(f.left, pos + (0,)), BOT))
            if clause == "know":
                return Box(Ver(go(f.body, pos + (0,))))
            ctor = {"and": And, "or": Or, "imp": Implies}[clause]
            return Box(ctor(go(f.left, pos + (0,)), go(f.right, pos + (1,))))

        return go(self.source, ())


def _tr(f: Formula, pos: Position, out: Position, log: list[TraceStep]) -> Formula:
    match f:
        case Atom():
            log.append(TraceStep(pos, "atom", out))
            return Box(f)
        case Bottom():
            log.append(TraceStep(pos, "bottom", out))
            return Box(f)
        case Implies(a, Bottom()):
            # tr(~A) = [](tr A -> _|_): the consequent stays unboxed
            log.append(TraceStep(pos, "neg", out))
            return Box(Implies(_tr(a, pos + (0,), out + (0, 0), log), BOT))
        case Know(a):
            log.append(TraceStep(pos, "know", out))
            return Box(Ver(_tr(a, pos + (0,), out + (0, 0), log)))
        case And(a, b) | Or(a, b) | Implies(a, b):
            clause = {And: "and", Or: "or", Implies: "imp"}[type(f)]
            log.append(TraceStep(pos, clause, out))
            left = _tr(a, pos + (0,), out + (0, 0), log)
            right = _tr(b, pos + (1,), out + (0, 1), log)
            return Box(type(f)(left, right))
    raise LanguageError(f"not an IEL formula: {f!r}")


def godel_tr_trace(f: Formula) -> TranslationTrace:
    if not in_language(f, Language.IEL):
        raise LanguageError("translation input must be in the IEL language")
    log: list[TraceStep] = []
    result = _tr(f, (), (), log)
    return TranslationTrace(f, result, tuple(log))


def godel_tr(f: Formula) -> Formula:
    return godel_tr_trace(f).result


def forgetful_projection(f: Formula) -> Formula:
    """Replace every proof term by a box."""
    if not in_language(f, Language.EXPLICIT):
        raise LanguageError("projection input must be in the explicit language")
    return _project(f)


def _project(f: Formula) -> Formula:
    if type(f) is Evid:
        return Box(_project(f.body))
    kids = children(f)
    return rebuild(f, [_project(k) for k in kids]) if kids else f
