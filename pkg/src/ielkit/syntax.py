"""Concrete syntax: tokenizer, recursive-descent parser and minimal-paren printer.

Precedence, tightest first: prefix operators (~ K [] V and t:), then &, then |,
then -> (right associative).  Inside proof terms ! binds tightest, then *, then +.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import (
    BOT,
    And,
    App,
    Atom,
    Bang,
    Bottom,
    Box,
    Const,
    Evid,
    Formula,
    Implies,
    Know,
    Language,
    Or,
    Plus,
    Term,
    Var,
    Ver,
    in_language,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str = ""):
        self.pos = pos
        self.text = text
        where = f" at column {pos + 1}" if pos is not None else ""
        super().__init__(f"{message}{where}")


class LanguageError(ValueError):
    pass


_ALIASES = {
    "⊥": "BOT",
    "_|_": "BOT",
    "∧": "&",
    "∨": "|",
    "→": "->",
    "¬": "~",
    "□": "[]",
    "·": "*",
    "⇒": "=>",
    "K": "K",
    "V": "V",
}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<op>_\|_|=>|->|\[\]|[⊥∧∨→¬□·⇒&|~:*+!(),KV])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" or the canonical operator text, "EOF" at the end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i, text)
        if m.lastgroup == "ident":
            out.append(Token("ident", m.group(), i))
        elif m.lastgroup == "op":
            op = m.group()
            out.append(Token(_ALIASES.get(op, op), op, i))
        i = m.end()
    out.append(Token("EOF", "", len(text)))
    return out


def default_is_variable(name: str) -> bool:
    """Proof-term identifiers starting with u..z are variables, the rest constants."""
    return name[0] in "uvwxyz"


class _Parser:
    def __init__(self, text: str, variables=None, constants=None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.variables = set(variables or ())
        self.constants = set(constants or ())

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            self.i += 1
            return self.toks[self.i - 1]
        return None

    def expect(self, kind: str) -> Token:
        tok = self.accept(kind)
        if tok is None:
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {found!r}", self.tok.pos, self.text)
        return tok

    def fail(self, message: str):
        raise ParseError(message, self.tok.pos, self.text)

    # formulas
    def formula(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.accept("|"):
            out = Or(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.accept("&"):
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.tok
        if self.accept("~"):
            return Implies(self.unary(), BOT)
        if self.accept("K"):
            return Know(self.unary())
        if self.accept("V"):
            return Ver(self.unary())
        if self.accept("[]"):
            return Box(self.unary())
        if self.accept("BOT"):
            return BOT
        if tok.kind in ("ident", "(", "!"):
            evid = self.try_evidence()
            if evid is not None:
                return evid
        if self.accept("ident"):
            return Atom(tok.text)
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        self.fail(f"unexpected {tok.text or 'end of input'!r}")

    def try_evidence(self) -> Formula | None:
        start = self.i
        try:
            term = self.term_atom()
        except ParseError:
            self.i = start
            return None
        if not self.accept(":"):
            self.i = start
            return None
        return Evid(term, self.unary())

    # proof terms
    def term(self) -> Term:
        out = self.term_product()
        while self.accept("+"):
            out = Plus(out, self.term_product())
        return out

    def term_product(self) -> Term:
        out = self.term_atom()
        while self.accept("*"):
            out = App(out, self.term_atom())
        return out

    def term_atom(self) -> Term:
        tok = self.tok
        if self.accept("!"):
            return Bang(self.term_atom())
        if self.accept("ident"):
            return self.name_term(tok.text)
        if self.accept("("):
            inner = self.term()
            self.expect(")")
            return inner
        self.fail("expected a proof term")

    def name_term(self, name: str) -> Term:
        if name in self.variables:
            return Var(name)
        if name in self.constants:
            return Const(name)
        return Var(name) if default_is_variable(name) else Const(name)


def _check_language(f: Formula, language, text: str) -> Formula:
    if language is not None and not in_language(f, language):
        raise LanguageError(f"{text!r} is not in the {Language(language).value} language")
    return f


def parse(text: str, language: Language | str | None = None, *, variables=None, constants=None) -> Formula:
    p = _Parser(text, variables, constants)
    f = p.formula()
    if p.tok.kind != "EOF":
        p.fail(f"trailing input {p.tok.text!r}")
    return _check_language(f, language, text)


def parse_term(text: str, *, variables=None, constants=None) -> Term:
    p = _Parser(text, variables, constants)
    t = p.term()
    if p.tok.kind != "EOF":
        p.fail(f"trailing input {p.tok.text!r}")
    return t


def parse_sequent(text: str, language=None, **names) -> tuple[tuple[Formula, ...], tuple[Formula, ...]]:
    """Parse "A1, A2 => B1, B2"; either side may be empty."""
    p = _Parser(text, names.get("variables"), names.get("constants"))

    def side(stop: str) -> list[Formula]:
        items = []
        if p.tok.kind == stop:
            return items
        items.append(p.formula())
        while p.accept(","):
            items.append(p.formula())
        return items

    ante = side("=>")
    p.expect("=>")
    succ = side("EOF")
    if p.tok.kind != "EOF":
        p.fail(f"trailing input {p.tok.text!r}")
    for f in ante + succ:
        _check_language(f, language, text)
    return tuple(ante), tuple(succ)


# ------------------------------------------------------------------- printer

_IMP, _OR, _AND, _UNARY = 1, 2, 3, 4

_ASCII = {"bot": "_|_", "and": " & ", "or": " | ", "imp": " -> ", "not": "~", "box": "[]", "app": " * "}
_UNICODE = {"bot": "⊥", "and": " ∧ ", "or": " ∨ ", "imp": " → ", "not": "¬", "box": "□", "app": "·"}


def print_term(t: Term, unicode: bool = False) -> str:
    sym = _UNICODE if unicode else _ASCII
    # iterative: internalized terms nest far deeper than the recursion limit
    out: list[str] = []
    stack: list = [(t, 0)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        s, ctx = item
        if type(s) in (Var, Const):
            out.append(s.name)
        elif type(s) is Bang:
            stack.append((s.term, 3))
            out.append("!")
        else:
            level = 1 if type(s) is Plus else 2
            op = " + " if type(s) is Plus else sym["app"]
            parts: list = [(s.left, level), op, (s.right, level + 1)]
            if level < ctx:
                parts = ["("] + parts + [")"]
            stack.extend(reversed(parts))
    return "".join(out)


def to_string(f: Formula, unicode: bool = False, abbreviate_negation: bool = True) -> str:
    sym = _UNICODE if unicode else _ASCII

    def go(g: Formula, ctx: int) -> str:
        match g:
            case Atom(name):
                return name
            case Bottom():
                return sym["bot"]
            case Implies(a, Bottom()) if abbreviate_negation:
                return sym["not"] + go(a, _UNARY)
            case Implies(a, b):
                s, level = go(a, _OR) + sym["imp"] + go(b, _IMP), _IMP
            case Or(a, b):
                s, level = go(a, _OR) + sym["or"] + go(b, _AND), _OR
            case And(a, b):
                s, level = go(a, _AND) + sym["and"] + go(b, _UNARY), _AND
            case Box(a):
                return sym["box"] + go(a, _UNARY)
            case Know(a):
                return _prefix("K", go(a, _UNARY))
            case Ver(a):
                return _prefix("V", go(a, _UNARY))
            case Evid(t, a):
                term = print_term(t, unicode)
                if type(t) in (Plus, App):
                    term = f"({term})"
                return term + ":" + go(a, _UNARY)
            case _:
                raise TypeError(f"not a formula: {g!r}")
        return f"({s})" if level < ctx else s

    return go(f, _IMP)


def _prefix(op: str, body: str) -> str:
    # K/V followed by an identifier or another K/V need a separating space
    return f"{op} {body}" if body[:1].isalpha() else op + body


def sequent_to_string(ante, succ, unicode: bool = False) -> str:
    arrow = "⇒" if unicode else "=>"
    left = ", ".join(to_string(f, unicode) for f in ante)
    right = ", ".join(to_string(f, unicode) for f in succ)
    return " ".join(s for s in (left, arrow, right) if s)


# `print` would shadow the builtin inside this module; export it under both names.
print_formula = to_string
