"""Internalization (constructive necessitation) and the V-lifting lemma.

Both work on proof DAGs first; the line-level wrappers at the bottom take and
return numbered derivations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..formula import (
    App,
    Bang,
    Const,
    Evid,
    Formula,
    Implies,
    Term,
    Var,
    Ver,
    conj,
    formula_consts,
    vars_of_all,
)
from .derivation import ConstantSpecification, Line, check_derivation
from .proof import (
    PAx,
    PAxNec,
    PBoxNec,
    PCS,
    PHyp,
    PMP,
    Proof,
    ProofError,
    ax,
    conj_project,
    discharge,
    discharge_all,
    from_derivation,
    linearize,
    mp,
    postorder,
    substitute_hyps,
    conj_intro_all,
)
from .schemas import system_id


class ConstantPool:
    """Fresh proof constants, one per distinct axiom formula."""

    def __init__(self, avoid: Iterable[str] = (), prefix: str = "c"):
        self.avoid = set(avoid)
        self.prefix = prefix
        self.by_formula: dict[Formula, str] = {}
        self.entries: list[tuple[str, Formula]] = []
        self._counter = itertools.count(1)

    def constant_for(self, f: Formula) -> str:
        c = self.by_formula.get(f)
        if c is None:
            c = next(f"{self.prefix}{i}" for i in self._counter if f"{self.prefix}{i}" not in self.avoid)
            self.avoid.add(c)
            self.by_formula[f] = c
            self.entries.append((c, f))
        return c


def lift(
    p: Proof,
    pool: ConstantPool,
    mode: str = "rule",
    variables: dict[Formula, Term] | None = None,
) -> tuple[Term, Proof]:
    """Return (t, proof of t:F) for a proof p of F.

    Hypotheses listed in `variables` become x:A hypotheses; any other
    hypothesis must already read s:B and is quoted as !s.
    """
    variables = variables or {}
    memo: dict[int, tuple[Term, Proof]] = {}
    for node in postorder([p]):
        kind = type(node)
        if kind is PHyp:
            f = node.formula
            if f in variables:
                t = variables[f]
                memo[id(node)] = (t, PHyp(Evid(t, f)))
            elif type(f) is Evid:
                memo[id(node)] = (Bang(f.term), mp(ax("E3", t=f.term, A=f.body), node))
            else:
                raise ProofError("hypothesis needs a proof variable or must read s:B")
        elif kind is PAx:
            c = pool.constant_for(node.formula)
            proof = PAxNec(c, node) if mode == "rule" else PCS(c, node.formula)
            memo[id(node)] = (Const(c), proof)
        elif kind is PCS or kind is PAxNec:
            c = Const(node.constant)
            memo[id(node)] = (Bang(c), mp(ax("E3", t=c, A=node.formula.body), node))
        elif kind is PMP:
            tq, pq = memo[id(node.major)]
            tr, pr = memo[id(node.minor)]
            e1 = ax("E1", t=tq, s=tr, A=node.minor.formula, B=node.formula)
            memo[id(node)] = (App(tq, tr), mp(e1, pq, pr))
        elif kind is PBoxNec:
            raise ProofError("box necessitation cannot occur in an explicit derivation")
        else:
            raise TypeError(node)
    return memo[id(p)]


def v_lift_proof(
    p: Proof,
    items: Sequence[Formula],
    lifted: Sequence[bool],
    pool: ConstantPool,
    mode: str = "rule",
) -> Proof:
    """From a proof of conj(items) -> X build conj(items') -> VX.

    items' keeps the quoted items (each must read x:A) and puts V in front
    of the items flagged in `lifted`.  With no items the input proves X and
    the output proves VX.
    """
    items = list(items)
    if items:
        x_proof = mp(p, conj_intro_all([PHyp(f) for f in items]))
        x = p.formula.right
    else:
        x_proof, x = p, p.formula
    gamma = [f for f, flag in zip(items, lifted) if flag]
    for f, flag in zip(items, lifted):
        if not flag and type(f) is not Evid:
            raise ProofError("unlifted context items must read x:A")
    curried = discharge_all(gamma, x_proof)
    t, proof = lift(curried, pool, mode)
    cur = mp(ax("E6", t=t, A=curried.formula), proof)
    body = curried.formula
    for g in gamma:
        rest = body.right
        cur = mp(ax("E5", A=g, B=rest), cur, PHyp(Ver(g)))
        body = rest
    assert cur.formula is Ver(x)
    if not items:
        return cur
    new_items = [Ver(f) if flag else f for f, flag in zip(items, lifted)]
    h = conj(new_items)
    parts = conj_project(PHyp(h), len(new_items))
    repl = {f: q for f, q in zip(new_items, parts)}
    return discharge(h, substitute_hyps(cur, repl))


# ------------------------------------------------------------ line wrappers


@dataclass
class Internalized:
    term: Term | None
    derivation: tuple[Line, ...]
    cs: ConstantSpecification

    @property
    def conclusion(self) -> Formula:
        return self.derivation[-1].formula


def _pool_for(d: Sequence[Line], cs) -> ConstantPool:
    used = {c for c, _ in cs}
    for line in d:
        if line.formula is not None:
            used |= formula_consts(line.formula)
        if hasattr(line.just, "constant"):
            used.add(line.just.constant)
    return ConstantPool(used)


def internalize(
    d: Sequence[Line],
    system="lpvminus",
    cs: Iterable[tuple[str, Formula]] = (),
    mode: str = "rule",
    variables: dict[Formula, Term] | None = None,
) -> Internalized:
    """Internalize a derivation of F into one of t:F.

    With no open hypotheses t is ground.  In "cs" mode the returned
    specification extends `cs` by the fresh constants; in "rule" mode it lists
    the constants introduced by axiom necessitation.
    """
    system = system_id(system)
    if not system.explicit:
        raise ValueError("internalization needs an explicit system")
    cs = ConstantSpecification.of(cs) if not isinstance(cs, ConstantSpecification) else cs
    nodes = from_derivation(d, system, cs, mode)
    root = nodes[-1]
    if variables is None:
        variables = {}
        names = (f"x{i}" for i in itertools.count(1))
        taken = vars_of_all(line.formula for line in d if line.formula is not None)
        for h in sorted(root.hyps, key=repr):
            name = next(n for n in names if n not in taken)
            variables[h] = Var(name)
    pool = _pool_for(d, cs)
    t, proof = lift(root, pool, mode, variables)
    lines = linearize(proof)
    new_cs = cs.union(pool.entries) if mode == "cs" else check_derivation(lines, system, cs, mode).used_cs
    return Internalized(t, lines, new_cs)


def v_lift(
    d: Sequence[Line],
    system="lpvminus",
    theta: Sequence[Formula] = (),
    gamma: Sequence[Formula] = (),
    cs: Iterable[tuple[str, Formula]] = (),
    mode: str = "rule",
) -> Internalized:
    """From a derivation of conj(theta + gamma) -> X build conj(theta + V gamma) -> VX.

    Every theta item must read x:A.  With both lists empty the input derives X.
    """
    system = system_id(system)
    cs = ConstantSpecification.of(cs) if not isinstance(cs, ConstantSpecification) else cs
    nodes = from_derivation(d, system, cs, mode)
    root = nodes[-1]
    items = list(theta) + list(gamma)
    if root.hyps:
        raise ProofError("v_lift expects a hypothesis-free derivation")
    if items and (type(root.formula) is not Implies or root.formula.left is not conj(items)):
        raise ProofError("conclusion must read conj(theta + gamma) -> X")
    pool = _pool_for(d, cs)
    proof = v_lift_proof(root, items, [False] * len(theta) + [True] * len(gamma), pool, mode)
    lines = linearize(proof)
    new_cs = cs.union(pool.entries) if mode == "cs" else check_derivation(lines, system, cs, mode).used_cs
    return Internalized(None, lines, new_cs)

