"""Loop-checked backward proof search for S4V-g and S4Vg.

Strategy, for a sequent kept free of duplicate formulas:

1. close by an axiom (after weakening away everything else);
2. apply an invertible propositional rule, non-branching ones first;
3. saturate the left modal rules: a boxed []X is copied by contraction and
   then unpacked by (box-l) once per branch segment, and by (interaction)
   while VX is missing;
4. try the non-invertible right rules in turn: (v-r), (box-r), then weak
   inconsistency elimination in S4Vg.

A branch is cut when its kernel (antecedent and succedent as sets, plus the
boxes already unpacked) already occurs on the path.  Failures that do not
depend on an ancestor's kernel are cached; so are all successes.  Depth counts logical rule applications.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..formula import BOT, And, Atom, Box, Formula, Implies, Or, Ver
from .core import L, R, RuleId, Sequent, SequentSystem, SNode, sequent_system, weaken_to
from .trim import trim

INF = float("inf")
BOX_V_BOT = Box(Ver(BOT))


class Outcome(str, enum.Enum):
    PROVED = "proved"
    SATURATED = "saturated-unprovable"
    BUDGET = "budget-exhausted"


@dataclass
class ProveResult:
    outcome: Outcome
    derivation: SNode | None
    nodes: int

    @property
    def proved(self) -> bool:
        return self.outcome is Outcome.PROVED


def _dedupe(seq: Sequent) -> Sequent:
    return Sequent(tuple(dict.fromkeys(seq.ante)), tuple(dict.fromkeys(seq.succ)))


def identity_derivation(f: Formula) -> SNode:
    """f => f, expanded down to atomic axioms."""
    seq = Sequent((f,), (f,))
    t = type(f)
    if t is Atom:
        return SNode(seq, RuleId.AX_ATOM)
    if f is BOT:
        return SNode(seq, RuleId.WR, (R, 0), (SNode(Sequent((BOT,), ()), RuleId.AX_BOT),))
    if t is And:
        a, b = f.left, f.right
        left = SNode(Sequent((a, b), (a,)), RuleId.WL, (L, 1), (identity_derivation(a),))
        right = SNode(Sequent((a, b), (b,)), RuleId.WL, (L, 0), (identity_derivation(b),))
        top = SNode(Sequent((a, b), (f,)), RuleId.AND_R, (R, 0), (left, right))
        return SNode(seq, RuleId.AND_L, (L, 0), (top,))
    if t is Or:
        a, b = f.left, f.right
        left = SNode(Sequent((a,), (a, b)), RuleId.WR, (R, 1), (identity_derivation(a),))
        right = SNode(Sequent((b,), (a, b)), RuleId.WR, (R, 0), (identity_derivation(b),))
        top = SNode(Sequent((f,), (a, b)), RuleId.OR_L, (L, 0), (left, right))
        return SNode(seq, RuleId.OR_R, (R, 0), (top,))
    if t is Implies:
        a, b = f.left, f.right
        # a -> b, a => b
        first = SNode(Sequent((a,), (b, a)), RuleId.WR, (R, 0), (identity_derivation(a),))
        second = SNode(Sequent((b, a), (b,)), RuleId.WL, (L, 1), (identity_derivation(b),))
        top = SNode(Sequent((f, a), (b,)), RuleId.IMP_L, (L, 0), (first, second))
        return SNode(seq, RuleId.IMP_R, (R, 0), (top,))
    if t is Box:
        inner = SNode(Sequent((f,), (f.body,)), RuleId.BOX_L, (L, 0), (identity_derivation(f.body),))
        return SNode(seq, RuleId.BOX_R, (R, 0), (inner,))
    if t is Ver:
        return SNode(seq, RuleId.V_R, (R, 0), (identity_derivation(f.body),))
    raise ValueError(f"not a modal formula: {f!r}")


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, system: SequentSystem, max_depth: int, max_nodes: int, identity_shortcut: bool):
        self.system = system
        self.max_depth = max_depth
        self.max_nodes = max_nodes
        self.identity_shortcut = identity_shortcut
        self.proved: dict[tuple, SNode] = {}
        self.failed: set[tuple] = set()
        self.path: dict[tuple, int] = {}
        self.nodes = 0
        self.budget_hit = False

    def search(self, seq: Sequent, depth: int, used: frozenset) -> tuple[SNode | None, float]:
        """Returns (derivation or None, shallowest ancestor index the failure relied on).

        `used` holds the boxes already unpacked by (box-l) since the last
        right modal rule.
        """
        used = used & frozenset(seq.ante)
        key = (*seq.kernel(), used)
        hit = self.proved.get(key[:2])
        if hit is not None:
            return hit, INF
        if key in self.failed:
            return None, INF
        if key in self.path:
            return None, self.path[key]
        if depth > self.max_depth:
            self.budget_hit = True
            return None, -1
        self.nodes += 1
        if self.nodes > self.max_nodes:
            self.budget_hit = True
            raise _Budget
        level = len(self.path)
        self.path[key] = level
        try:
            node, dep = self.expand(seq, depth, used)
        finally:
            del self.path[key]
        if node is not None:
            self.proved[key[:2]] = node
            return node, INF
        if dep >= level:
            self.failed.add(key)
            return None, INF
        return None, dep

    def premise(self, seq: Sequent, depth: int, used: frozenset = frozenset()) -> tuple[SNode | None, float]:
        clean = _dedupe(seq)
        node, dep = self.search(clean, depth, used)
        if node is None:
            return None, dep
        return weaken_to(seq, node), dep

    # ------------------------------------------------------------------ steps

    def expand(self, seq: Sequent, depth: int, used: frozenset) -> tuple[SNode | None, float]:
        ante, succ = seq.ante, seq.succ
        closed = self.close(seq)
        if closed is not None:
            return closed, INF
        if BOT in succ:
            j = succ.index(BOT)
            node, dep = self.premise(Sequent(ante, succ[:j] + succ[j + 1 :]), depth, used)
            return (SNode(seq, RuleId.WR, (R, j), (node,)) if node else None), dep

        step = self.propositional(seq)
        if step is not None:
            rule, principal, premises = step
            built = []
            for p in premises:
                node, dep = self.premise(p, depth + 1, used)
                if node is None:
                    return None, dep  # the rule is invertible
                built.append(node)
            return SNode(seq, rule, principal, tuple(built)), INF

        step = self.left_modal(seq, used)
        if step is not None:
            rule, i, new = step
            copied = Sequent(ante + (ante[i],), succ)
            if rule is RuleId.BOX_L:
                used = used | {ante[i]}
            node, dep = self.premise(Sequent(ante + (new,), succ), depth + 1, used)
            if node is None:
                return None, dep
            inner = SNode(copied, rule, (L, len(ante)), (node,))
            return SNode(seq, RuleId.CL, (L, i), (inner,)), INF

        best = INF
        for target, rule, principal, premise in self.right_modal(seq):
            node, dep = self.premise(premise, depth + 1)
            if node is not None:
                return weaken_to(seq, SNode(target, rule, principal, (node,))), INF
            best = min(best, dep)
        return None, best

    def close(self, seq: Sequent) -> SNode | None:
        if BOT in seq.ante:
            return weaken_to(seq, SNode(Sequent((BOT,), ()), RuleId.AX_BOT))
        right = set(seq.succ)
        for f in seq.ante:
            if f in right and type(f) is Atom:
                return weaken_to(seq, SNode(Sequent((f,), (f,)), RuleId.AX_ATOM))
        if self.identity_shortcut:
            for f in seq.ante:
                if f in right:
                    return weaken_to(seq, identity_derivation(f))
        return None

    @staticmethod
    def propositional(seq: Sequent):
        ante, succ = seq.ante, seq.succ
        for i, f in enumerate(ante):
            if type(f) is And:
                rest = ante[:i] + ante[i + 1 :]
                return RuleId.AND_L, (L, i), [Sequent(rest + (f.left, f.right), succ)]
        for j, f in enumerate(succ):
            rest = succ[:j] + succ[j + 1 :]
            if type(f) is Or:
                return RuleId.OR_R, (R, j), [Sequent(ante, rest + (f.left, f.right))]
            if type(f) is Implies:
                return RuleId.IMP_R, (R, j), [Sequent(ante + (f.left,), rest + (f.right,))]
        for i, f in enumerate(ante):
            rest = ante[:i] + ante[i + 1 :]
            if type(f) is Implies:
                return RuleId.IMP_L, (L, i), [Sequent(rest, succ + (f.left,)), Sequent(rest + (f.right,), succ)]
            if type(f) is Or:
                return RuleId.OR_L, (L, i), [Sequent(rest + (f.left,), succ), Sequent(rest + (f.right,), succ)]
        for j, f in enumerate(succ):
            if type(f) is And:
                rest = succ[:j] + succ[j + 1 :]
                return RuleId.AND_R, (R, j), [Sequent(ante, rest + (f.left,)), Sequent(ante, rest + (f.right,))]
        return None

    @staticmethod
    def left_modal(seq: Sequent, used: frozenset):
        have = set(seq.ante)
        for i, f in enumerate(seq.ante):
            if type(f) is Box:
                if f not in used and f.body not in have:
                    return RuleId.BOX_L, i, f.body
                if Ver(f.body) not in have:
                    return RuleId.INTERACTION, i, Ver(f.body)
        return None

    def right_modal(self, seq: Sequent):
        ante, succ = seq.ante, seq.succ
        boxed = tuple(f for f in ante if type(f) is Box)
        modal = tuple(f for f in ante if type(f) in (Box, Ver))
        for f in succ:
            if type(f) is Ver:
                unwrapped = tuple(g if type(g) is Box else g.body for g in modal)
                yield Sequent(modal, (f,)), RuleId.V_R, (R, 0), Sequent(unwrapped, (f.body,))
        for f in succ:
            if type(f) is Box:
                yield Sequent(boxed, (f,)), RuleId.BOX_R, (R, 0), Sequent(boxed, (f.body,))
        if self.system.has_wie and succ != (BOX_V_BOT,):
            yield Sequent(ante, ()), RuleId.WIE, None, Sequent(ante, (BOX_V_BOT,))


def prove(
    goal: Sequent,
    system: SequentSystem | str = SequentSystem.S4V_G,
    max_depth: int = 50,
    max_nodes: int = 200_000,
    identity_shortcut: bool = True,
    trim_result: bool = True,
) -> ProveResult:
    """Backward search for a derivation of `goal`; deterministic for fixed inputs.

    With `trim_result` the found derivation is pruned of unused steps.
    """
    system = sequent_system(system)
    search = _Search(system, max_depth, max_nodes, identity_shortcut)
    try:
        node, _ = search.premise(goal, 0)
    except _Budget:
        return ProveResult(Outcome.BUDGET, None, search.nodes)
    if node is not None:
        if trim_result:
            node = trim(node, system)
        return ProveResult(Outcome.PROVED, node, search.nodes)
    if search.budget_hit:
        return ProveResult(Outcome.BUDGET, None, search.nodes)
    return ProveResult(Outcome.SATURATED, None, search.nodes)


def prove_formula(f: Formula, system: SequentSystem | str = SequentSystem.S4V_G, **budget) -> ProveResult:
    return prove(Sequent((), (f,)), system, **budget)
