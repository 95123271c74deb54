"""Axiom schemas of the seven Hilbert systems and syntactic schema matching."""

from __future__ import annotations

import enum

from ..formula import (
    BOT,
    And,
    App,
    Bang,
    Box,
    Evid,
    Formula,
    Implies,
    Know,
    Language,
    Or,
    Plus,
    Term,
    Ver,
    children,
    in_language,
    rebuild,
    subformulas,
    term_children,
)
from ..syntax import LanguageError


class SystemId(str, enum.Enum):
    IEL_MINUS = "ielminus"
    IEL = "iel"
    S4V_MINUS = "s4vminus"
    S4V = "s4v"
    LP = "lp"
    LPV_MINUS = "lpvminus"
    LPV = "lpv"

    @property
    def language(self) -> Language:
        if self in (SystemId.IEL_MINUS, SystemId.IEL):
            return Language.IEL
        if self in (SystemId.S4V_MINUS, SystemId.S4V):
            return Language.MODAL
        return Language.EXPLICIT

    @property
    def explicit(self) -> bool:
        return self.language is Language.EXPLICIT

    @property
    def has_box(self) -> bool:
        return self.language is Language.MODAL


_ALIASES = {
    "iel-": SystemId.IEL_MINUS,
    "ielm": SystemId.IEL_MINUS,
    "s4v-": SystemId.S4V_MINUS,
    "s4vm": SystemId.S4V_MINUS,
    "lpv-": SystemId.LPV_MINUS,
    "lpvm": SystemId.LPV_MINUS,
}


def system_id(name: str | SystemId) -> SystemId:
    if isinstance(name, SystemId):
        return name
    key = name.strip().lower().replace("_", "").replace("⁻", "-")
    if key in _ALIASES:
        return _ALIASES[key]
    return SystemId(key)


class MetaF(Formula):
    """Formula metavariable inside a schema."""

    __slots__ = ("name",)
    _fields = __match_args__ = ("name",)


class MetaT(Term):
    """Proof-term metavariable inside a schema."""

    __slots__ = ("name",)
    _fields = __match_args__ = ("name",)


A, B, C = MetaF("A"), MetaF("B"), MetaF("C")
t, s = MetaT("t"), MetaT("s")


def _imp(*fs):
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Implies(f, out)
    return out


def _neg(f):
    return Implies(f, BOT)


SCHEMAS: dict[str, Formula] = {
    # propositional base
    "P1": _imp(A, B, A),
    "P2": _imp(_imp(A, B, C), _imp(A, B), _imp(A, C)),
    "P3": _imp(And(A, B), A),
    "P4": _imp(And(A, B), B),
    "P5": _imp(A, B, And(A, B)),
    "P6": _imp(A, Or(A, B)),
    "P7": _imp(B, Or(A, B)),
    "P8": _imp(_imp(A, C), _imp(B, C), _imp(Or(A, B), C)),
    "P9": _imp(BOT, A),
    "P10": _imp(_neg(_neg(A)), A),
    # epistemic
    "IE1": _imp(Know(_imp(A, B)), Know(A), Know(B)),
    "IE2": _imp(A, Know(A)),
    "IE3": _imp(Know(A), _neg(_neg(A))),
    "TC": _neg(Know(BOT)),
    # modal
    "A0K": _imp(Box(_imp(A, B)), Box(A), Box(B)),
    "A0T": _imp(Box(A), A),
    "A04": _imp(Box(A), Box(Box(A))),
    "A1": _imp(Ver(_imp(A, B)), Ver(A), Ver(B)),
    "A2": _imp(Box(A), Ver(A)),
    "A3": _neg(Box(Ver(BOT))),
    # explicit
    "E1": _imp(Evid(t, _imp(A, B)), Evid(s, A), Evid(App(t, s), B)),
    "E2": _imp(Evid(t, A), A),
    "E3": _imp(Evid(t, A), Evid(Bang(t), Evid(t, A))),
    "E4a": _imp(Evid(t, A), Evid(Plus(s, t), A)),
    "E4b": _imp(Evid(t, A), Evid(Plus(t, s), A)),
    "E5": _imp(Ver(_imp(A, B)), Ver(A), Ver(B)),
    "E6": _imp(Evid(t, A), Ver(A)),
    "E7": _neg(Evid(t, Ver(BOT))),
}

_INT = ["P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9"]
_CL = _INT + ["P10"]

SYSTEM_SCHEMAS: dict[SystemId, tuple[str, ...]] = {
    SystemId.IEL_MINUS: tuple(_INT + ["IE1", "IE2"]),
    SystemId.IEL: tuple(_INT + ["IE1", "IE2", "IE3", "TC"]),
    SystemId.S4V_MINUS: tuple(_CL + ["A0K", "A0T", "A04", "A1", "A2"]),
    SystemId.S4V: tuple(_CL + ["A0K", "A0T", "A04", "A1", "A2", "A3"]),
    SystemId.LP: tuple(_CL + ["E1", "E2", "E3", "E4a", "E4b"]),
    SystemId.LPV_MINUS: tuple(_CL + ["E1", "E2", "E3", "E4a", "E4b", "E5", "E6"]),
    SystemId.LPV: tuple(_CL + ["E1", "E2", "E3", "E4a", "E4b", "E5", "E6", "E7"]),
}


def _match_term(pat: Term, term: Term, env: dict) -> bool:
    if type(pat) is MetaT:
        bound = env.get(pat)
        if bound is None:
            env[pat] = term
            return True
        return bound is term
    if type(pat) is not type(term):
        return False
    return all(_match_term(p, q, env) for p, q in zip(term_children(pat), term_children(term)))


def match(pattern: Formula, f: Formula, env: dict | None = None) -> dict | None:
    """One-way syntactic match; returns the metavariable binding or None."""
    env = {} if env is None else env
    stack = [(pattern, f)]
    while stack:
        pat, g = stack.pop()
        if type(pat) is MetaF:
            bound = env.get(pat)
            if bound is None:
                env[pat] = g
            elif bound is not g:
                return None
            continue
        if type(pat) is not type(g):
            return None
        if type(pat) is Evid and not _match_term(pat.term, g.term, env):
            return None
        if not children(pat) and pat is not g:
            return None
        stack.extend(zip(children(pat), children(g)))
    return env


def matching_schemas(f: Formula, system: SystemId | str) -> list[str]:
    system = system_id(system)
    return [sid for sid in SYSTEM_SCHEMAS[system] if match(SCHEMAS[sid], f) is not None]


def match_axiom(f: Formula, system: SystemId | str) -> str | None:
    """First schema (in the system's documented order) that f instantiates."""
    system = system_id(system)
    if not in_language(f, system.language):
        raise LanguageError(f"formula is outside the {system.value} language")
    if system is SystemId.LP and any(type(g) is Ver for g in subformulas(f)):
        raise LanguageError("LP formulas contain no verification operator")
    found = matching_schemas(f, system)
    return found[0] if found else None


def is_instance(f: Formula, schema: str) -> bool:
    return match(SCHEMAS[schema], f) is not None


def instantiate(schema: str, **binding) -> Formula:
    """Build a schema instance, e.g. instantiate("P1", A=p, B=q)."""
    env = {}
    for name, value in binding.items():
        env[MetaT(name) if isinstance(value, Term) else MetaF(name)] = value
    return _inst(SCHEMAS[schema], env)


def _inst(f: Formula, env) -> Formula:
    if type(f) is MetaF:
        return env[f]
    if type(f) is Evid:
        return Evid(_inst_term(f.term, env), _inst(f.body, env))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [_inst(k, env) for k in kids])


def _inst_term(t_: Term, env) -> Term:
    if type(t_) is MetaT:
        return env[t_]
    kids = term_children(t_)
    if not kids:
        return t_
    if type(t_) is Bang:
        return Bang(_inst_term(kids[0], env))
    return type(t_)(_inst_term(kids[0], env), _inst_term(kids[1], env))

