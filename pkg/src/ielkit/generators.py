"""Random formulas and random Hilbert derivations, for tests and benchmarks.

Derivations are grown forward from axiom instances: each step either adds an
axiom instance or applies a schema whose antecedent is an already proved
formula, so every generated derivation checks by construction.  Height counts
inference steps above the leaves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .formula import (
    BOT,
    And,
    App,
    Atom,
    Bang,
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
)
from .hilbert.derivation import ConstantSpecification, Line
from .hilbert.proof import PAx, PAxNec, PBoxNec, PCS, PHyp, PMP, Proof, ax, linearize, postorder
from .hilbert.schemas import SYSTEM_SCHEMAS, SystemId, system_id

ATOMS = ("p", "q", "r")


def random_term(rng: random.Random, depth: int = 1, variables=("x", "y"), constants=("a", "b")) -> Term:
    if depth <= 0 or rng.random() < 0.4:
        if constants and rng.random() < 0.3:
            return Const(rng.choice(constants))
        return Var(rng.choice(variables))
    op = rng.choice(("app", "plus", "bang"))
    if op == "bang":
        return Bang(random_term(rng, depth - 1, variables, constants))
    left = random_term(rng, depth - 1, variables, constants)
    right = random_term(rng, depth - 1, variables, constants)
    return App(left, right) if op == "app" else Plus(left, right)


_UNARY = {
    Language.IEL: (Know,),
    Language.MODAL: (Box, Ver),
    Language.EXPLICIT: (Ver, "evid"),
}


def random_formula(
    rng: random.Random,
    language: Language | str = Language.MODAL,
    depth: int = 3,
    atoms=ATOMS,
    term_depth: int = 1,
) -> Formula:
    """A formula of at most the given depth; negations appear as A -> _|_."""
    language = Language(language)
    if depth <= 0 or rng.random() < 0.2:
        return BOT if rng.random() < 0.08 else Atom(rng.choice(atoms))
    roll = rng.random()
    if roll < 0.35:
        op = rng.choice(_UNARY[language])
        body = random_formula(rng, language, depth - 1, atoms, term_depth)
        if op == "evid":
            return Evid(random_term(rng, term_depth), body)
        return op(body)
    if roll < 0.45:
        return Implies(random_formula(rng, language, depth - 1, atoms, term_depth), BOT)
    kind = rng.choice((And, Or, Implies, Implies))
    return kind(
        random_formula(rng, language, depth - 1, atoms, term_depth),
        random_formula(rng, language, depth - 1, atoms, term_depth),
    )


# ------------------------------------------------------------------ derivations


@dataclass
class GeneratedDerivation:
    lines: tuple[Line, ...]
    system: SystemId
    cs: ConstantSpecification
    mode: str
    proof: Proof
    hypotheses: tuple[Formula, ...] = ()

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula


class _Grower:
    def __init__(self, rng: random.Random, system: SystemId, mode: str, max_height: int):
        self.rng = rng
        self.system = system
        self.schemas = set(SYSTEM_SCHEMAS[system])
        self.language = system.language
        self.mode = mode
        self.max_height = max_height
        self.pool: list[Proof] = []
        self.height: dict[int, int] = {}
        self.cs: list[tuple[str, Formula]] = []
        self.n_const = 0

    # helpers
    def small(self, depth: int = 1) -> Formula:
        return random_formula(self.rng, self.language, depth, term_depth=1)

    def term(self) -> Term:
        return random_term(self.rng, 1, constants=())

    def h(self, p: Proof) -> int:
        return self.height[id(p)]

    def add(self, p: Proof, h: int) -> Proof:
        self.height[id(p)] = h
        self.pool.append(p)
        return p

    def mp(self, major: Proof, minor: Proof, h_major: int | None = None) -> Proof:
        hm = self.h(major) if h_major is None else h_major
        return self.add(PMP(major, minor), max(hm, self.h(minor)) + 1)

    def axiom_leaf(self, schema: str, **binding) -> Proof:
        p = ax(schema, **binding)
        self.height[id(p)] = 0
        return p

    def random_axiom(self) -> Proof:
        rng = self.rng
        A, B, C = self.small(), self.small(), self.small()
        candidates = ["P1", "P2", "P3", "P5", "P6", "P8"]
        if self.system.explicit:
            candidates += ["E1", "E2", "E3", "E4a", "E6", "E5"]
            if "E7" in self.schemas:
                candidates.append("E7")
        elif self.system.has_box:
            candidates += ["A0K", "A0T", "A04", "A1", "A2"]
            if "A3" in self.schemas:
                candidates.append("A3")
        schema = rng.choice(candidates)
        t, s = self.term(), self.term()
        binding = {
            "P1": dict(A=A, B=B),
            "P2": dict(A=A, B=B, C=C),
            "P3": dict(A=A, B=B),
            "P5": dict(A=A, B=B),
            "P6": dict(A=A, B=B),
            "P8": dict(A=A, B=B, C=C),
            "E1": dict(t=t, s=s, A=A, B=B),
            "E2": dict(t=t, A=A),
            "E3": dict(t=t, A=A),
            "E4a": dict(t=t, s=s, A=A),
            "E5": dict(A=A, B=B),
            "E6": dict(t=t, A=A),
            "E7": dict(t=t),
            "A0K": dict(A=A, B=B),
            "A0T": dict(A=A),
            "A04": dict(A=A),
            "A1": dict(A=A, B=B),
            "A2": dict(A=A),
            "A3": dict(),
        }[schema]
        return self.add(ax(schema, **binding), 0)

    def necessitate(self, p: Proof) -> Proof | None:
        """c:A from an axiom line, or []A from a hypothesis-free proof."""
        if self.system.explicit and type(p) is PAx:
            self.n_const += 1
            c = f"c{self.n_const}"
            if self.mode == "cs":
                self.cs.append((c, p.formula))
                return self.add(PCS(c, p.formula), 0)
            return self.add(PAxNec(c, p), self.h(p) + 1)
        if self.system.has_box and not p.hyps:
            return self.add(PBoxNec(p), self.h(p) + 1)
        return None

    def forward(self, p: Proof) -> Proof | None:
        """Apply a schema with antecedent p.formula (one modus ponens)."""
        rng, X = self.rng, p.formula
        options = ["P1", "P6"]
        other = rng.choice(self.pool)
        if self.h(other) < self.max_height:
            options.append("P5")
        if type(X) is And:
            options += ["P3", "P4"]
        if type(X) is Implies and X.left is other.formula:
            options.append("MP")
        if type(X) is Evid:
            options += ["E2", "E3", "E4a", "E4b", "E6"]
            if type(X.body) is Implies:
                options.append("E1")
        if type(X) is Ver and type(X.body) is Implies:
            options.append("V-K")
        if type(X) is Box:
            options += ["A0T", "A04", "A2"]
            if type(X.body) is Implies:
                options.append("A0K")
        options = [o for o in options if o in ("MP", "V-K") or o in self.schemas]
        if not options:
            return None
        pick = rng.choice(options)
        if pick == "MP":
            return self.mp(p, other)
        if pick == "V-K":
            schema = "E5" if self.system.explicit else "A1"
            if schema not in self.schemas:
                return None
            return self.mp(self.axiom_leaf(schema, A=X.body.left, B=X.body.right), p)
        if pick == "P1":
            return self.mp(self.axiom_leaf("P1", A=X, B=self.small()), p)
        if pick == "P6":
            return self.mp(self.axiom_leaf("P6", A=X, B=self.small()), p)
        if pick == "P5":
            first = self.mp(self.axiom_leaf("P5", A=X, B=other.formula), p)
            return self.mp(first, other)
        if pick in ("P3", "P4"):
            return self.mp(self.axiom_leaf(pick, A=X.left, B=X.right), p)
        if pick == "E1":
            return self.mp(self.axiom_leaf("E1", t=X.term, s=self.term(), A=X.body.left, B=X.body.right), p)
        if pick in ("E2", "E3", "E6"):
            return self.mp(self.axiom_leaf(pick, t=X.term, A=X.body), p)
        if pick in ("E4a", "E4b"):
            return self.mp(self.axiom_leaf(pick, t=X.term, s=self.term(), A=X.body), p)
        if pick == "A0K":
            return self.mp(self.axiom_leaf("A0K", A=X.body.left, B=X.body.right), p)
        return self.mp(self.axiom_leaf(pick, A=X.body), p)

    def grow(self, steps: int, seed_proofs: list[Proof] = ()) -> Proof:
        rng = self.rng
        for q in seed_proofs:
            self.add(q, 0)
        if not self.pool:
            self.random_axiom()
        last = self.pool[-1]
        for _ in range(steps):
            live = [q for q in self.pool if self.h(q) < self.max_height]
            if not live:
                break
            base = rng.choice(live[-3:]) if rng.random() < 0.7 else rng.choice(live)
            roll = rng.random()
            new = None
            if roll < 0.15:
                new = self.random_axiom()
            elif roll < 0.35:
                new = self.necessitate(base)
            if new is None:
                new = self.forward(base)
            if new is not None and self.h(new) <= self.max_height:
                last = new
        return last


def random_derivation(
    rng: random.Random,
    system: SystemId | str = SystemId.LPV,
    max_height: int = 6,
    steps: int = 8,
    mode: str = "rule",
    min_height: int = 2,
) -> GeneratedDerivation:
    """A hypothesis-free derivation whose proof tree has height at most `max_height`."""
    system = system_id(system)
    while True:
        g = _Grower(rng, system, mode, max_height)
        root = g.grow(steps)
        if g.h(root) >= min(min_height, max_height) and not root.hyps:
            break
    cs = ConstantSpecification.of([e for e in g.cs if e[0] in _constants_used(root)])
    return GeneratedDerivation(linearize(root), system, cs, mode, root)


def random_hypothetical_derivation(
    rng: random.Random,
    system: SystemId | str = SystemId.LPV_MINUS,
    max_height: int = 5,
    steps: int = 6,
    mode: str = "rule",
) -> GeneratedDerivation:
    """A derivation whose conclusion depends on exactly one hypothesis."""
    system = system_id(system)
    while True:
        g = _Grower(rng, system, mode, max_height)
        hyp = PHyp(g.small(2))
        root = g.grow(steps, [hyp])
        chain = [q for q in g.pool if hyp.formula in q.hyps]
        root = chain[-1]
        if g.h(root) >= 1:
            break
    cs = ConstantSpecification.of([e for e in g.cs if e[0] in _constants_used(root)])
    return GeneratedDerivation(linearize(root), system, cs, mode, root, (hyp.formula,))


def _constants_used(root: Proof) -> set[str]:
    return {q.constant for q in postorder([root]) if type(q) in (PCS, PAxNec)}
