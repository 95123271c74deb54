"""Hilbert proofs as hash-consed DAGs, plus the constructions built on them.

Synthesized proofs (deduction, internalization, realization witnesses) are
assembled here and only flattened to numbered lines at the end, so shared
sub-proofs are emitted once.
"""

from __future__ import annotations

import weakref
from typing import Iterable, Sequence

from ..formula import BOT, Box, Const, Evid, Formula, Implies, Term, subst_formula
from .derivation import (
    MP as MPJust,
    Axiom,
    AxNec,
    BoxNec,
    CSRef,
    Hyp,
    Line,
    check_derivation,
)
from ..syntax import to_string
from .schemas import instantiate, matching_schemas


class ProofError(ValueError):
    pass


_TABLE: "weakref.WeakValueDictionary[tuple, Proof]" = weakref.WeakValueDictionary()


class Proof:
    """A node of a proof DAG; `formula` is its conclusion, `hyps` its open hypotheses."""

    __slots__ = ("formula", "hyps", "__weakref__")
    kind = "?"

    def __new__(cls, *args):
        key = (cls, *args)
        node = _TABLE.get(key)
        if node is None:
            node = object.__new__(cls)
            node._init(*args)
            _TABLE[key] = node
        return node

    def premises(self) -> tuple["Proof", ...]:
        return ()

    def __repr__(self):
        return f"<{self.kind} {to_string(self.formula)}>"


class PHyp(Proof):
    __slots__ = ()
    kind = "hyp"

    def _init(self, f):
        self.formula = f
        self.hyps = frozenset([f])


class PAx(Proof):
    __slots__ = ("schema",)
    kind = "axiom"

    def _init(self, schema, f):
        self.schema = schema
        self.formula = f
        self.hyps = frozenset()


class PCS(Proof):
    """c:A read from a constant specification."""

    __slots__ = ("constant", "body")
    kind = "cs"

    def _init(self, constant, body):
        self.constant, self.body = constant, body
        self.formula = Evid(Const(constant), body)
        self.hyps = frozenset()


class PMP(Proof):
    __slots__ = ("major", "minor")
    kind = "mp"

    def _init(self, major, minor):
        f = major.formula
        if type(f) is not Implies or f.left is not minor.formula:
            raise ProofError(f"cannot apply {to_string(f)} to {to_string(minor.formula)}")
        self.major, self.minor = major, minor
        self.formula = f.right
        self.hyps = major.hyps | minor.hyps

    def premises(self):
        return (self.major, self.minor)


class PBoxNec(Proof):
    __slots__ = ("premise",)
    kind = "box-nec"

    def _init(self, premise):
        if premise.hyps:
            raise ProofError("box necessitation under open hypotheses")
        self.premise = premise
        self.formula = Box(premise.formula)
        self.hyps = frozenset()

    def premises(self):
        return (self.premise,)


class PAxNec(Proof):
    __slots__ = ("constant", "premise")
    kind = "axiom-nec"

    def _init(self, constant, premise):
        if type(premise) is not PAx:
            raise ProofError("axiom necessitation needs an axiom premise")
        self.constant, self.premise = constant, premise
        self.formula = Evid(Const(constant), premise.formula)
        self.hyps = frozenset()

    def premises(self):
        return (self.premise,)


# ----------------------------------------------------------------- traversal


def postorder(roots: Iterable[Proof]) -> list[Proof]:
    """Every node reachable from `roots`, premises before conclusions, each once."""
    seen: set[int] = set()
    out: list[Proof] = []
    for root in roots:
        if id(root) in seen:
            continue
        stack = [(root, False)]
        while stack:
            node, ready = stack.pop()
            if ready:
                out.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for p in reversed(node.premises()):
                if id(p) not in seen:
                    stack.append((p, False))
    return out


def proof_size(p: Proof) -> int:
    return len(postorder([p]))


def linearize(p: Proof, state_formulas: bool = True) -> tuple[Line, ...]:
    """Flatten a DAG into numbered lines; the root ends up on the last line."""
    index: dict[int, int] = {}
    lines: list[Line] = []
    for node in postorder([p]):
        f = node.formula if state_formulas else None
        if type(node) is PHyp:
            line = Line(node.formula, Hyp())
        elif type(node) is PAx:
            line = Line(node.formula, Axiom(node.schema))
        elif type(node) is PCS:
            line = Line(node.formula, CSRef(node.constant))
        elif type(node) is PMP:
            line = Line(f, MPJust(index[id(node.minor)], index[id(node.major)]))
        elif type(node) is PBoxNec:
            line = Line(f, BoxNec(index[id(node.premise)]))
        elif type(node) is PAxNec:
            line = Line(f, AxNec(index[id(node.premise)], node.constant))
        else:
            raise TypeError(node)
        lines.append(line)
        index[id(node)] = len(lines)
    return tuple(lines)


def from_derivation(d: Sequence[Line], system, cs=(), mode: str = "rule") -> list[Proof]:
    """Rebuild the DAG of a checked derivation (one proof per line)."""
    res = check_derivation(d, system, cs, mode)
    if not res.ok:
        raise ProofError(f"derivation does not check: {res.describe()}")
    out: list[Proof] = []
    for line, f in zip(d, res.conclusions):
        j = line.just
        if isinstance(j, Hyp):
            node = PHyp(f)
        elif isinstance(j, Axiom):
            node = PAx(j.schema or _schema_for(f, system), f)
        elif isinstance(j, CSRef):
            node = PCS(j.constant, f.body)
        elif isinstance(j, MPJust):
            a, b = out[j.first - 1], out[j.second - 1]
            node = PMP(b, a) if type(b.formula) is Implies and b.formula.left is a.formula and b.formula.right is f else PMP(a, b)
        elif isinstance(j, BoxNec):
            node = PBoxNec(out[j.premise - 1])
        else:
            node = PAxNec(j.constant, out[j.premise - 1])
        out.append(node)
    return out


def _schema_for(f, system):
    return matching_schemas(f, system)[0]


# -------------------------------------------------------------- constructors


def ax(schema: str, **binding) -> PAx:
    return PAx(schema, instantiate(schema, **binding))


def mp(major: Proof, *minors: Proof) -> Proof:
    """Apply `major` to the minors in turn (curried modus ponens)."""
    out = major
    for m in minors:
        out = PMP(out, m)
    return out


def identity(a: Formula) -> Proof:
    """A -> A from the K and S combinators."""
    aa = Implies(a, a)
    s = ax("P2", A=a, B=aa, C=a)
    return mp(s, ax("P1", A=a, B=aa), ax("P1", A=a, B=a))


def discharge(a: Formula, p: Proof) -> Proof:
    """Deduction theorem: from a proof of F (possibly using hypothesis A) build A -> F."""
    if a not in p.hyps:
        return mp(ax("P1", A=p.formula, B=a), p)
    memo: dict[int, Proof] = {}
    for node in postorder([p]):
        if a not in node.hyps:
            continue
        if type(node) is PHyp:
            memo[id(node)] = identity(a)
        elif type(node) is PMP:
            major, minor = node.major, node.minor
            if type(minor) is PHyp and minor.formula is a and a not in major.hyps:
                memo[id(node)] = major  # A -> F already proves the discharged step
                continue
            dq = memo[id(major)] if a in major.hyps else mp(ax("P1", A=major.formula, B=a), major)
            dr = memo[id(minor)] if a in minor.hyps else mp(ax("P1", A=minor.formula, B=a), minor)
            s = ax("P2", A=a, B=minor.formula, C=node.formula)
            memo[id(node)] = mp(s, dq, dr)
        else:
            raise ProofError(f"cannot discharge {a!r} through a {node.kind} step")
    return memo[id(p)]


def discharge_all(hyps: Sequence[Formula], p: Proof) -> Proof:
    """Discharge in reverse so the result reads H1 -> (H2 -> ... -> F)."""
    for h in reversed(hyps):
        p = discharge(h, p)
    return p


def substitute_hyps(p: Proof, repl: dict[Formula, Proof]) -> Proof:
    """Replace hypothesis leaves by proofs of the same formula."""
    memo: dict[int, Proof] = {}
    for node in postorder([p]):
        if not (node.hyps & repl.keys()):
            memo[id(node)] = node
        elif type(node) is PHyp:
            memo[id(node)] = repl[node.formula]
        elif type(node) is PMP:
            memo[id(node)] = PMP(memo[id(node.major)], memo[id(node.minor)])
        else:
            raise ProofError(f"hypothesis below a {node.kind} step")
    return memo[id(p)]


def substitute_terms(p: Proof, sub: dict[str, Term], memo: dict | None = None) -> Proof:
    """Apply a proof-variable substitution to every formula of the DAG.

    Validity is preserved: schemas and axiom necessitation are closed under it.
    Pass the same `memo` when rewriting several proofs with one substitution.
    """
    memo = {} if memo is None else memo
    fmemo = memo.setdefault("formulas", {})
    for node in postorder([p]):
        if id(node) in memo:
            continue
        kind = type(node)
        if kind is PHyp:
            new = PHyp(subst_formula(node.formula, sub, fmemo))
        elif kind is PAx:
            new = PAx(node.schema, subst_formula(node.formula, sub, fmemo))
        elif kind is PCS:
            new = PCS(node.constant, subst_formula(node.body, sub, fmemo))
        elif kind is PMP:
            new = PMP(memo[id(node.major)][1], memo[id(node.minor)][1])
        elif kind is PBoxNec:
            new = PBoxNec(memo[id(node.premise)][1])
        else:
            new = PAxNec(node.constant, memo[id(node.premise)][1])
        memo[id(node)] = (node, new)  # keep the old node alive so its id stays unique
    return memo[id(p)][1]


# ------------------------------------------------------- propositional lemmas


def conj_intro(p: Proof, q: Proof) -> Proof:
    return mp(ax("P5", A=p.formula, B=q.formula), p, q)


def conj_intro_all(ps: Sequence[Proof]) -> Proof:
    """Left-nested conjunction of the conclusions; TOP when empty."""
    if not ps:
        return top()
    out = ps[0]
    for q in ps[1:]:
        out = conj_intro(out, q)
    return out


def conj_left(p: Proof) -> Proof:
    f = p.formula
    return mp(ax("P3", A=f.left, B=f.right), p)


def conj_right(p: Proof) -> Proof:
    f = p.formula
    return mp(ax("P4", A=f.left, B=f.right), p)


def conj_project(p: Proof, n: int) -> list[Proof]:
    """Split a left-nested n-fold conjunction into its n conjuncts."""
    if n == 0:
        return []
    out = []
    for _ in range(n - 1):
        out.append(conj_right(p))
        p = conj_left(p)
    out.append(p)
    return out[::-1]


def disj_left(p: Proof, b: Formula) -> Proof:
    return mp(ax("P6", A=p.formula, B=b), p)


def disj_right(a: Formula, p: Proof) -> Proof:
    return mp(ax("P7", A=a, B=p.formula), p)


def disj_elim(p_or: Proof, p_ac: Proof, p_bc: Proof) -> Proof:
    a, b = p_or.formula.left, p_or.formula.right
    c = p_ac.formula.right
    return mp(ax("P8", A=a, B=b, C=c), p_ac, p_bc, p_or)


def efq(p_bot: Proof, a: Formula) -> Proof:
    if a is BOT:
        return p_bot
    return mp(ax("P9", A=a), p_bot)


def dne(p_nn: Proof) -> Proof:
    a = p_nn.formula.left.left
    return mp(ax("P10", A=a), p_nn)


def top() -> Proof:
    """TOP is _|_ -> _|_, an instance of ex falso."""
    return ax("P9", A=BOT)


def modus_tollens(p_imp: Proof, p_negb: Proof) -> Proof:
    a = p_imp.formula.left
    return discharge(a, mp(p_negb, mp(p_imp, PHyp(a))))


def compose(p_ab: Proof, p_bc: Proof) -> Proof:
    a = p_ab.formula.left
    return discharge(a, mp(p_bc, mp(p_ab, PHyp(a))))

