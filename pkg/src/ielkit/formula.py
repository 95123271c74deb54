"""Syntax trees for the epistemic, modal and explicit languages.

All formula and proof-term nodes are hash-consed: building the same tree twice
returns the same object, so equality is identity and hashing is O(1).  This
matters because realization witnesses share huge subterms.
"""

from __future__ import annotations

import enum
import weakref
from typing import Iterable, Iterator, Sequence

_TABLE: "weakref.WeakValueDictionary[tuple, _Node]" = weakref.WeakValueDictionary()


class _Node:
    __slots__ = ("__weakref__",)
    _fields: tuple[str, ...] = ()

    def __new__(cls, *args):
        if len(args) != len(cls._fields):
            raise TypeError(f"{cls.__name__} takes {len(cls._fields)} arguments")
        key = (cls, *args)
        node = _TABLE.get(key)
        if node is None:
            node = object.__new__(cls)
            for name, value in zip(cls._fields, args):
                object.__setattr__(node, name, value)
            _TABLE[key] = node
        return node

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), tuple(getattr(self, f) for f in self._fields))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __repr__(self):
        args = ", ".join(repr(getattr(self, f)) for f in self._fields)
        return f"{type(self).__name__}({args})"


# ---------------------------------------------------------------- proof terms


class Term(_Node):
    __slots__ = ()


class Var(Term):
    __slots__ = ("name",)
    _fields = __match_args__ = ("name",)


class Const(Term):
    __slots__ = ("name",)
    _fields = __match_args__ = ("name",)


class App(Term):
    """Application t·s."""

    __slots__ = ("left", "right")
    _fields = __match_args__ = ("left", "right")


class Plus(Term):
    __slots__ = ("left", "right")
    _fields = __match_args__ = ("left", "right")


class Bang(Term):
    """Proof checker !t."""

    __slots__ = ("term",)
    _fields = __match_args__ = ("term",)


# ------------------------------------------------------------------- formulas


class Formula(_Node):
    __slots__ = ("_ops",)  # lazily cached bitmask of the operators below this node


class Atom(Formula):
    __slots__ = ("name",)
    _fields = __match_args__ = ("name",)


class Bottom(Formula):
    __slots__ = ()


class And(Formula):
    __slots__ = ("left", "right")
    _fields = __match_args__ = ("left", "right")


class Or(Formula):
    __slots__ = ("left", "right")
    _fields = __match_args__ = ("left", "right")


class Implies(Formula):
    __slots__ = ("left", "right")
    _fields = __match_args__ = ("left", "right")


class Know(Formula):
    __slots__ = ("body",)
    _fields = __match_args__ = ("body",)


class Box(Formula):
    __slots__ = ("body",)
    _fields = __match_args__ = ("body",)


class Ver(Formula):
    __slots__ = ("body",)
    _fields = __match_args__ = ("body",)


class Evid(Formula):
    """t:A, read "t is a proof of A"."""

    __slots__ = ("term", "body")
    _fields = __match_args__ = ("term", "body")


BOT = Bottom()
TOP = Implies(BOT, BOT)

BINARY = (And, Or, Implies)
UNARY = (Know, Box, Ver)


def neg(f: Formula) -> Formula:
    return Implies(f, BOT)


def is_neg(f: Formula) -> bool:
    return type(f) is Implies and f.right is BOT


def conj(items: Sequence[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is TOP."""
    if not items:
        return TOP
    out = items[0]
    for f in items[1:]:
        out = And(out, f)
    return out


def disj(items: Sequence[Formula]) -> Formula:
    """Left-nested disjunction; the empty disjunction is BOT."""
    if not items:
        return BOT
    out = items[0]
    for f in items[1:]:
        out = Or(out, f)
    return out


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, UNARY) or type(f) is Evid:
        return (f.body,)
    return ()


def term_children(t: Term) -> tuple[Term, ...]:
    if type(t) in (App, Plus):
        return (t.left, t.right)
    if type(t) is Bang:
        return (t.term,)
    return ()


def rebuild(f: Formula, kids: Sequence[Formula]) -> Formula:
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    if isinstance(f, UNARY):
        return type(f)(kids[0])
    if type(f) is Evid:
        return Evid(f.term, kids[0])
    return f


# ------------------------------------------------------------------ languages


class Language(str, enum.Enum):
    IEL = "iel"
    MODAL = "modal"
    EXPLICIT = "explicit"


_FORBIDDEN = {
    Language.IEL: (Box, Ver, Evid),
    Language.MODAL: (Know, Evid),
    Language.EXPLICIT: (Know, Box),
}


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over every node, duplicates included."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


_OP_BIT = {Know: 1, Box: 2, Ver: 4, Evid: 8}
_BANNED_BITS = {lang: sum(_OP_BIT[k] for k in kinds) for lang, kinds in _FORBIDDEN.items()}


def _operator_mask(f: Formula) -> int:
    try:
        return f._ops
    except AttributeError:
        pass
    stack = [f]
    while stack:
        g = stack[-1]
        if hasattr(g, "_ops"):
            stack.pop()
            continue
        kids = children(g)
        todo = [k for k in kids if not hasattr(k, "_ops")]
        if todo:
            stack.extend(todo)
            continue
        mask = _OP_BIT.get(type(g), 0)
        for k in kids:
            mask |= k._ops
        object.__setattr__(g, "_ops", mask)
        stack.pop()
    return f._ops


def in_language(f: Formula, lang: Language | str) -> bool:
    return not _operator_mask(f) & _BANNED_BITS[Language(lang)]


def language_of(f: Formula) -> Language | None:
    """Smallest of the three languages containing f, preferring IEL then modal."""
    for lang in Language:
        if in_language(f, lang):
            return lang
    return None


def _distinct(root, kids, seen: set[int] | None = None) -> Iterator:
    """Each node reachable from root exactly once; shared nodes are not revisited."""
    seen = set() if seen is None else seen
    if id(root) in seen:
        return
    seen.add(id(root))
    stack = [root]
    while stack:
        g = stack.pop()
        yield g
        for k in kids(g):
            if id(k) not in seen:
                seen.add(id(k))
                stack.append(k)


def terms_of(f: Formula) -> Iterator[Term]:
    """Distinct evidence terms of f."""
    seen = set()
    for g in _distinct(f, children):
        if type(g) is Evid and id(g.term) not in seen:
            seen.add(id(g.term))
            yield g.term


def term_vars(t: Term) -> set[str]:
    return {s.name for s in _distinct(t, term_children) if type(s) is Var}


def term_consts(t: Term) -> set[str]:
    return {s.name for s in _distinct(t, term_children) if type(s) is Const}


def is_ground(t: Term) -> bool:
    return not term_vars(t)


def _term_nodes(f: Formula) -> Iterator[Term]:
    seen: set[int] = set()
    for t in terms_of(f):
        yield from _distinct(t, term_children, seen)


def formula_vars(f: Formula) -> set[str]:
    return {s.name for s in _term_nodes(f) if type(s) is Var}


def vars_of_all(formulas: Iterable[Formula]) -> set[str]:
    """Variables of many formulas that share structure, walking each node once."""
    seen_f: set[int] = set()
    seen_t: set[int] = set()
    out = set()
    for f in formulas:
        for g in _distinct(f, children, seen_f):
            if type(g) is Evid:
                out |= {s.name for s in _distinct(g.term, term_children, seen_t) if type(s) is Var}
    return out


def formula_consts(f: Formula) -> set[str]:
    return {s.name for s in _term_nodes(f) if type(s) is Const}


def atoms_of(f: Formula) -> set[str]:
    return {g.name for g in _distinct(f, children) if type(g) is Atom}


def depth(f: Formula) -> int:
    kids = children(f)
    return 1 + max(map(depth, kids)) if kids else 0


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


# ------------------------------------------------------------- substitutions


def subst_term(t: Term, sub: dict[str, Term], memo: dict | None = None) -> Term:
    """Replace proof variables (by name) inside a term."""
    if memo is None:
        memo = {}
    # iterative post-order: internalized terms can be thousands of levels deep
    stack = [(t, False)]
    while stack:
        s, ready = stack.pop()
        if s in memo:
            continue
        if type(s) is Var:
            memo[s] = sub.get(s.name, s)
        elif type(s) is Const:
            memo[s] = s
        elif ready:
            kids = [memo[k] for k in term_children(s)]
            memo[s] = Bang(kids[0]) if type(s) is Bang else type(s)(kids[0], kids[1])
        else:
            stack.append((s, True))
            stack.extend((k, False) for k in term_children(s) if k not in memo)
    return memo[t]


def subst_formula(f: Formula, sub: dict[str, Term], memo: dict | None = None) -> Formula:
    if memo is None:
        memo = {}
    hit = memo.get(f)
    if hit is not None:
        return hit
    if type(f) is Evid:
        out = Evid(subst_term(f.term, sub, memo), subst_formula(f.body, sub, memo))
    else:
        kids = children(f)
        out = rebuild(f, [subst_formula(k, sub, memo) for k in kids]) if kids else f
    memo[f] = out
    return out


def subst_atoms(f: Formula, sub: dict[str, Formula]) -> Formula:
    if type(f) is Atom:
        return sub.get(f.name, f)
    kids = children(f)
    return rebuild(f, [subst_atoms(k, sub) for k in kids]) if kids else f


# ----------------------------------------------------------------- positions

Position = tuple[int, ...]


class Polarity(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    def flip(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


def subformula_at(f: Formula, pos: Position) -> Formula:
    for i in pos:
        kids = children(f)
        if not 0 <= i < len(kids):
            raise IndexError(f"position {pos} does not address a node")
        f = kids[i]
    return f


def replace_at(f: Formula, pos: Position, new: Formula) -> Formula:
    if not pos:
        return new
    kids = list(children(f))
    if not 0 <= pos[0] < len(kids):
        raise IndexError(f"position {pos} does not address a node")
    kids[pos[0]] = replace_at(kids[pos[0]], pos[1:], new)
    return rebuild(f, kids)


def positions(f: Formula, kind: type | None = None) -> list[Position]:
    """All positions of f (pre-order), optionally only those holding a `kind` node."""
    out = []
    stack: list[tuple[Formula, Position]] = [(f, ())]
    while stack:
        g, pos = stack.pop()
        if kind is None or type(g) is kind:
            out.append(pos)
        kids = children(g)
        for i in reversed(range(len(kids))):
            stack.append((kids[i], pos + (i,)))
    return out


def box_positions(f: Formula) -> list[Position]:
    return positions(f, Box)


def polarity_of(f: Formula, pos: Position, root: Polarity = Polarity.POSITIVE) -> Polarity:
    """Polarity of the node at `pos`: flips only when entering the left of an implication."""
    pol = root
    for i in pos:
        kids = children(f)
        if not 0 <= i < len(kids):
            raise IndexError(f"position {pos} does not address a node")
        if type(f) is Implies and i == 0:
            pol = pol.flip()
        f = kids[i]
    return pol
