"""Realization of S4V-g / S4Vg derivations into LPV- / LPV Hilbert proofs.

Each node's sequent A1..An => B1..Bm is read as A1^r & .. & An^r -> B1^r | .. | Bm^r
and proved from its premises, leaves first.  Negative and non-essential
positive box families become proof variables; an essential family with k
(box-r) introductions starts as v1 + ... + vk, and each vi is replaced by the
internalized premise proof of its introduction once that node is reached.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..formula import (
    TOP,
    Box,
    Evid,
    Formula,
    Implies,
    Plus,
    Polarity,
    Term,
    Var,
    children,
    conj,
    disj,
    formula_vars,
    rebuild,
    subst_term,
    term_vars,
)
from ..hilbert.derivation import ConstantSpecification, Line, check_derivation
from ..hilbert.internalize import ConstantPool, lift, v_lift_proof
from ..hilbert.proof import (
    PHyp,
    Proof,
    ax,
    conj_intro_all,
    conj_project,
    discharge,
    linearize,
    mp,
    substitute_hyps,
    substitute_terms,
    top,
)
from ..hilbert.schemas import SystemId
from ..hilbert.tableau import derive
from ..sequent.core import L, R, RuleId, SequentSystem, SNode, sequent_system
from .families import Annotation, BoxFamily, Occurrence, annotate_boxes, compute_families


class RealizationError(RuntimeError):
    pass


@dataclass
class RealizationResult:
    formula: Formula  # F^r for a root => F, otherwise the root's G^r
    witness: tuple[Line, ...]
    system: SystemId
    cs: ConstantSpecification
    families: list[BoxFamily]
    terms: dict[int, Term]  # family id -> realizing term
    substitutions: list[tuple[str, Term]]
    node_formulas: list[Formula]  # G^r per node, premises-first order
    proof: Proof = field(repr=False)
    provisional: frozenset[str] = frozenset()
    mode: str = "rule"

    @property
    def witness_ok(self) -> bool:
        return check_derivation(self.witness, self.system, self.cs, self.mode).ok


def _chain(summands: list[Term]) -> Term:
    out = summands[0]
    for s in summands[1:]:
        out = Plus(out, s)
    return out


class _Realizer:
    def __init__(self, ann: Annotation, families: list[BoxFamily], system: SequentSystem, mode: str):
        self.ann = ann
        self.nodes = ann.nodes
        self.families = families
        self.system = system
        self.mode = mode
        self.pool = ConstantPool(prefix="c")
        self.family_of: dict[Occurrence, int] = {}
        for fam in families:
            for occ in fam.members:
                self.family_of[occ] = fam.id
        # terms for every family
        self.var_term: dict[int, Term] = {}
        self.summands: dict[int, list[Term]] = {}
        self.slot: dict[int, tuple[int, int]] = {}  # box-r node -> (family, summand index)
        self.provisional: set[str] = set()
        xs = v = 0
        for fam in families:
            if fam.polarity is Polarity.NEGATIVE or not fam.essential:
                xs += 1
                self.var_term[fam.id] = Var(f"x{xs}")
            else:
                terms = []
                for j, k in enumerate(fam.introductions):
                    v += 1
                    self.provisional.add(f"v{v}")
                    terms.append(Var(f"v{v}"))
                    self.slot[k] = (fam.id, j)
                self.summands[fam.id] = terms
        self.number = {id(n): k for k, n in enumerate(self.nodes)}
        self.cache: dict[tuple, Formula] = {}
        self.proofs: dict[int, Proof] = {}
        self.log: list[tuple[str, Term]] = []

    # ---------------------------------------------------------- realized formulas

    def term(self, fid: int) -> Term:
        if fid in self.var_term:
            return self.var_term[fid]
        return _chain(self.summands[fid])

    def realized(self, k: int, side: str, i: int) -> Formula:
        key = (k, side, i)
        hit = self.cache.get(key)
        if hit is None:
            f = self.nodes[k].sequent.side(side)[i]
            hit = self.cache[key] = self._real(f, k, side, i, ())
        return hit

    def _real(self, f: Formula, k: int, side: str, i: int, pos: tuple[int, ...]) -> Formula:
        if type(f) is Box:
            fid = self.family_of[(k, side, i, pos)]
            return Evid(self.term(fid), self._real(f.body, k, side, i, pos + (0,)))
        kids = children(f)
        if not kids:
            return f
        return rebuild(f, [self._real(c, k, side, i, pos + (n,)) for n, c in enumerate(kids)])

    def items(self, k: int, side: str) -> list[Formula]:
        return [self.realized(k, side, i) for i in range(len(self.nodes[k].sequent.side(side)))]

    def goal(self, k: int) -> Formula:
        return Implies(conj(self.items(k, L)), disj(self.items(k, R)))

    # ------------------------------------------------------- proofs per node

    def run(self) -> Proof:
        # consumed proofs are dropped so substitutions only rewrite live ones
        uses = [0] * len(self.nodes)
        for node in self.nodes:
            for p in node.premises:
                uses[self.index(p)] += 1
        last = len(self.nodes) - 1
        for k, node in enumerate(self.nodes):
            premises = [self.proofs[self.index(p)] for p in node.premises]
            proof = self.node_proof(k, node, premises)
            if proof.formula is not self.goal(k):
                raise RealizationError(f"node {k} ({node.rule.value}) proved the wrong formula")
            for p in node.premises:
                pk = self.index(p)
                uses[pk] -= 1
                if not uses[pk]:
                    del self.proofs[pk]
            self.proofs[k] = proof
        return self.proofs[last]

    def node_proof(self, k: int, node: SNode, premises: list[Proof]) -> Proof:
        rule = node.rule
        goal = self.goal(k)
        if rule is RuleId.BOX_R:
            return self.box_right(k, node, premises[0])
        if rule is RuleId.V_R:
            return self.v_right(k, node, premises[0])
        known = list(premises)
        if rule in (RuleId.BOX_L, RuleId.INTERACTION):
            _, i = node.principal
            f = self.realized(k, L, i)  # t:X
            schema = "E2" if rule is RuleId.BOX_L else "E6"
            known.append(ax(schema, t=f.term, A=f.body))
        elif rule is RuleId.WIE:
            (prem,) = node.premises
            f = self.realized(self.index(prem), R, 0)  # t:V_|_
            known.append(ax("E7", t=f.term))
        return derive(goal, known)

    def index(self, node: SNode) -> int:
        return self.number[id(node)]

    def _hyp_proof(self, ante: list[Formula], p: Proof) -> Proof:
        """From a proof of conj(ante) -> X, a proof of X under the hypotheses ante."""
        if not ante:
            return mp(p, top())
        return mp(p, conj_intro_all([PHyp(f) for f in ante]))

    def _package(self, ante: list[Formula], p: Proof) -> Proof:
        """Turn a proof under the hypotheses `ante` into conj(ante) -> conclusion."""
        if not ante:
            return mp(ax("P1", A=p.formula, B=TOP), p)
        h = conj(ante)
        parts = conj_project(PHyp(h), len(ante))
        return discharge(h, substitute_hyps(p, dict(zip(ante, parts))))

    def v_right(self, k: int, node: SNode, premise: Proof) -> Proof:
        ante = self.items(k, L)
        lifted = [type(g) is not Box for g in node.sequent.ante]
        unwrapped = [f.body if flag else f for f, flag in zip(ante, lifted)]
        x = self.realized(k, R, 0).body
        if not ante:
            body = self._hyp_proof([], premise)
            v = v_lift_proof(body, [], [], self.pool, self.mode)
            return self._package([], v)
        glued = derive(Implies(conj(unwrapped), x), [premise])
        return v_lift_proof(glued, unwrapped, lifted, self.pool, self.mode)

    def box_right(self, k: int, node: SNode, premise: Proof) -> Proof:
        (prem,) = node.premises
        pk = self.index(prem)
        x_proof = self._hyp_proof(self.items(pk, L), premise)
        t, lifted = lift(x_proof, self.pool, self.mode)
        if term_vars(t) & self.provisional:
            raise RealizationError("internalized term mentions a provisional variable")
        fid, j = self.slot[k]
        name = self.summands[fid][j].name
        self.substitute(name, t)
        lifted = self._rewritten(lifted)
        summands = self.summands[fid]
        # walk t:X up the left-nested sum to (..(s0 + s1) + ..):X
        proof = lifted
        for m in range(j, len(summands)):
            if m == j:
                if m > 0:
                    proof = mp(ax("E4a", t=t, s=_chain(summands[:m]), A=lifted.formula.body), proof)
            else:
                proof = mp(ax("E4b", t=_chain(summands[:m]), s=summands[m], A=lifted.formula.body), proof)
        return self._package(self.items(k, L), proof)

    def substitute(self, name: str, t: Term) -> None:
        sub = {name: t}
        self.log.append((name, t))
        tmemo: dict = {}
        for fid, terms in self.summands.items():
            self.summands[fid] = [subst_term(s, sub, tmemo) for s in terms]
        self.cache.clear()
        self._memo = {"formulas": tmemo}
        self._sub = sub
        for key in list(self.proofs):
            self.proofs[key] = substitute_terms(self.proofs[key], sub, self._memo)

    def _rewritten(self, p: Proof) -> Proof:
        return substitute_terms(p, self._sub, self._memo)


def realize(
    root: SNode,
    system: SequentSystem | str = SequentSystem.S4V_G,
    mode: str = "rule",
    verify: bool = True,
) -> RealizationResult:
    """Realize a checked derivation; the witness is checked in LPV- or LPV."""
    system = sequent_system(system)
    ann = annotate_boxes(root, system)
    families = compute_families(ann)
    r = _Realizer(ann, families, system, mode)
    g_proof = r.run()
    seq = root.sequent
    if not seq.ante and len(seq.succ) == 1:
        final = mp(g_proof, top())  # discharge the empty antecedent
    else:
        final = g_proof
    target = SystemId.LPV if system is SequentSystem.S4V_G else SystemId.LPV_MINUS
    witness = linearize(final)
    cs = ConstantSpecification.of(r.pool.entries) if mode == "cs" else ()
    check = check_derivation(witness, target, cs, mode=mode)
    if verify and not check.ok:
        raise RealizationError(f"witness does not check: {check.describe()}")
    leftover = formula_vars(final.formula) & r.provisional
    if leftover:
        raise RealizationError(f"provisional variables survive: {sorted(leftover)}")
    last = len(ann.nodes) - 1
    return RealizationResult(
        formula=final.formula,
        witness=witness,
        system=target,
        cs=check.used_cs if mode == "rule" else cs,
        families=families,
        terms={fam.id: r.term(fam.id) for fam in families},
        substitutions=r.log,
        node_formulas=[r.goal(k) for k in range(last + 1)],
        proof=final,
        provisional=frozenset(r.provisional),
        mode=mode,
    )
