"""Proof-producing classical tableau over Hilbert proofs.

Formulas headed by t:, V, [] or K and atoms are opaque literals.  Branching
is done "with lemma": refuting the first branch yields the negation of its
formula as a new fact, so the second branch continues in place.  Unit
propagation runs before any branching, which keeps the one-step tautologies
that glue sequent rules together nearly linear.
"""

from __future__ import annotations

from typing import Iterable

from ..formula import BOT, TOP, And, Formula, Implies, Or, is_neg, neg
from .proof import (
    PHyp,
    Proof,
    ProofError,
    ax,
    conj_intro,
    conj_left,
    conj_right,
    discharge,
    disj_elim,
    disj_left,
    disj_right,
    dne,
    efq,
    identity,
    modus_tollens,
    mp,
    top,
)


class NotATautology(ProofError):
    pass


def derive(goal: Formula, known: Iterable[Proof] = ()) -> Proof:
    """Prove `goal` classically from the conclusions of `known`.

    The result's open hypotheses are among those of `known`.
    """
    facts: dict[Formula, Proof] = {}
    for p in known:
        facts.setdefault(p.formula, p)
    return _derive(goal, facts)


def _derive(goal: Formula, facts: dict[Formula, Proof]) -> Proof:
    if goal in facts:
        return facts[goal]
    if goal is TOP:
        return top()
    if type(goal) is Implies:
        inner = dict(facts)
        inner.setdefault(goal.left, PHyp(goal.left))
        return discharge(goal.left, _derive(goal.right, inner))
    if type(goal) is And:
        return conj_intro(_derive(goal.left, facts), _derive(goal.right, facts))
    if goal is BOT:
        return _Refuter(facts).run()
    negated = neg(goal)
    inner = dict(facts)
    inner[negated] = PHyp(negated)
    return dne(discharge(negated, _Refuter(inner).run()))


class _Refuter:
    def __init__(self, facts: dict[Formula, Proof]):
        self.facts = dict(facts)
        self.expanded: set[Formula] = set()

    # -- truth evaluation against the current facts (booleans first, proofs on demand)

    def is_true(self, f: Formula) -> bool:
        if f in self.facts or f is TOP:
            return True
        t = type(f)
        if t is And:
            return self.is_true(f.left) and self.is_true(f.right)
        if t is Or:
            return self.is_true(f.left) or self.is_true(f.right)
        if t is Implies and f.right is not BOT:
            return self.is_true(f.right) or self.is_false(f.left)
        if t is Implies:
            return self.is_false(f.left)
        return False

    def is_false(self, f: Formula) -> bool:
        if f is BOT or neg(f) in self.facts:
            return True
        t = type(f)
        if t is And:
            return self.is_false(f.left) or self.is_false(f.right)
        if t is Or:
            return self.is_false(f.left) and self.is_false(f.right)
        if t is Implies:
            return self.is_true(f.left) and self.is_false(f.right)
        return False

    def prove_true(self, f: Formula) -> Proof:
        if f in self.facts:
            return self.facts[f]
        if f is TOP:
            return top()
        t = type(f)
        if t is And:
            return conj_intro(self.prove_true(f.left), self.prove_true(f.right))
        if t is Or:
            if self.is_true(f.left):
                return disj_left(self.prove_true(f.left), f.right)
            return disj_right(f.left, self.prove_true(f.right))
        if t is Implies:
            if f.right is not BOT and self.is_true(f.right):
                return mp(ax("P1", A=f.right, B=f.left), self.prove_true(f.right))
            # from ~a conclude a -> b
            not_a = self.prove_false(f.left)
            if f.right is BOT:
                return not_a
            return discharge(f.left, efq(mp(not_a, PHyp(f.left)), f.right))
        raise ProofError("formula is not true in this branch")

    def prove_false(self, f: Formula) -> Proof:
        """A proof of ~f."""
        n = neg(f)
        if n in self.facts:
            return self.facts[n]
        if f is BOT:
            return top()
        t = type(f)
        h = PHyp(f)
        if t is And:
            if self.is_false(f.left):
                return discharge(f, mp(self.prove_false(f.left), conj_left(h)))
            return discharge(f, mp(self.prove_false(f.right), conj_right(h)))
        if t is Or:
            return discharge(f, disj_elim(h, self.prove_false(f.left), self.prove_false(f.right)))
        if t is Implies:
            a = self.prove_true(f.left)
            if f.right is BOT:
                return discharge(f, mp(h, a))
            return discharge(f, mp(self.prove_false(f.right), mp(h, a)))
        raise ProofError("formula is not false in this branch")

    # -- tableau loop

    def add(self, p: Proof) -> bool:
        if p.formula in self.facts:
            return False
        self.facts[p.formula] = p
        return True

    def closure(self) -> Proof | None:
        if BOT in self.facts:
            return self.facts[BOT]
        for f, p in self.facts.items():
            if self.is_false(f):
                return mp(self.prove_false(f), p)
        return None

    def alpha(self) -> bool:
        changed = False
        for f, p in list(self.facts.items()):
            if f in self.expanded:
                continue
            t = type(f)
            if t is And:
                self.expanded.add(f)
                changed |= self.add(conj_left(p))
                changed |= self.add(conj_right(p))
            elif is_neg(f):
                g = f.left
                tg = type(g)
                if tg is Or:
                    self.expanded.add(f)
                    changed |= self.add(modus_tollens(ax("P6", A=g.left, B=g.right), p))
                    changed |= self.add(modus_tollens(ax("P7", A=g.left, B=g.right), p))
                elif tg is Implies and is_neg(g):
                    # ~~a gives a
                    self.expanded.add(f)
                    changed |= self.add(dne(p))
                elif tg is Implies:
                    self.expanded.add(f)
                    changed |= self.add(self._neg_imp_antecedent(p))
                    changed |= self.add(modus_tollens(ax("P1", A=g.right, B=g.left), p))
        return changed

    @staticmethod
    def _neg_imp_antecedent(p: Proof) -> Proof:
        """From ~(a -> b) derive a (classically)."""
        a, b = p.formula.left.left, p.formula.left.right
        na = neg(a)
        a_to_b = discharge(a, efq(mp(PHyp(na), PHyp(a)), b))
        return dne(discharge(na, mp(p, a_to_b)))

    def propagate(self) -> bool:
        for f, p in list(self.facts.items()):
            t = type(f)
            if t is Implies and f.right is not BOT:
                if f.right in self.facts:
                    continue
                if self.is_true(f.left):
                    return self.add(mp(p, self.prove_true(f.left)))
                if neg(f.left) not in self.facts and self.is_false(f.right):
                    return self.add(modus_tollens(p, self.prove_false(f.right)))
            elif t is Or:
                if f.left in self.facts or f.right in self.facts:
                    continue
                if self.is_false(f.left):
                    return self.add(self._syllogism(p, self.prove_false(f.left), right=True))
                if self.is_false(f.right):
                    return self.add(self._syllogism(p, self.prove_false(f.right), right=False))
            elif is_neg(f) and type(f.left) is And:
                a, b = f.left.left, f.left.right
                if neg(a) in self.facts or neg(b) in self.facts:
                    continue
                if self.is_true(a):
                    pa = self.prove_true(a)
                    return self.add(discharge(b, mp(p, conj_intro(pa, PHyp(b)))))
                if self.is_true(b):
                    pb = self.prove_true(b)
                    return self.add(discharge(a, mp(p, conj_intro(PHyp(a), pb))))
        return False

    @staticmethod
    def _syllogism(p_or: Proof, p_not: Proof, right: bool) -> Proof:
        """From a | b and ~a derive b (right=True), or from a | b and ~b derive a."""
        a, b = p_or.formula.left, p_or.formula.right
        if right:
            via_a = discharge(a, efq(mp(p_not, PHyp(a)), b))
            return disj_elim(p_or, via_a, identity(b))
        via_b = discharge(b, efq(mp(p_not, PHyp(b)), a))
        return disj_elim(p_or, identity(a), via_b)

    def pick_beta(self) -> tuple[Formula, Formula] | None:
        """First unresolved branching fact and the branch formula to refute first."""
        for f in self.facts:
            t = type(f)
            if t is Implies and f.right is not BOT:
                if f.right not in self.facts and neg(f.left) not in self.facts:
                    return f, neg(f.left)
            elif t is Or:
                if f.left not in self.facts and f.right not in self.facts:
                    return f, f.left
            elif is_neg(f) and type(f.left) is And:
                a, b = f.left.left, f.left.right
                if neg(a) not in self.facts and neg(b) not in self.facts:
                    return f, neg(a)
        return None

    def run(self) -> Proof:
        while True:
            closed = self.closure()
            if closed is not None:
                return closed
            if self.alpha() or self.propagate():
                continue
            picked = self.pick_beta()
            if picked is None:
                raise NotATautology("open branch: the goal does not follow propositionally")
            _, first = picked
            sub = dict(self.facts)
            sub[first] = PHyp(first)
            refuted = discharge(first, _Refuter(sub).run())  # ~first
            if is_neg(first):
                self.add(dne(refuted))
            else:
                self.add(refuted)

