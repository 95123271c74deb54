"""Sequents, rule applications and the derivation checker for S4V-g and S4Vg.

Sequents are ordered tuples compared as multisets.  Every rule is described by
the premises it expects, each premise formula carrying a link to the
conclusion occurrence it comes from.  The same table drives the checker and
the box-occurrence bookkeeping used by the realizer.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ..formula import BOT, And, Atom, Box, Formula, Implies, Language, Or, Ver, in_language
from ..syntax import sequent_to_string

L, R = "L", "R"

# (side, index, prefix): a premise subformula at path q corresponds to the
# conclusion occurrence (side, index) at path prefix + q.
Link = tuple[str, int, tuple[int, ...]]


class SequentSystem(str, enum.Enum):
    S4V_MINUS_G = "s4vminus_g"
    S4V_G = "s4vg"

    @property
    def has_wie(self) -> bool:
        return self is SequentSystem.S4V_G


_SYSTEM_ALIASES = {
    "s4vminusg": SequentSystem.S4V_MINUS_G,
    "s4v-g": SequentSystem.S4V_MINUS_G,
    "s4vmg": SequentSystem.S4V_MINUS_G,
    "s4vminus": SequentSystem.S4V_MINUS_G,
    "s4v-": SequentSystem.S4V_MINUS_G,
    "s4vg": SequentSystem.S4V_G,
    "s4v": SequentSystem.S4V_G,
}


def sequent_system(name: str | SequentSystem) -> SequentSystem:
    if isinstance(name, SequentSystem):
        return name
    key = name.strip().lower().replace("_", "").replace("⁻", "-")
    if key not in _SYSTEM_ALIASES:
        raise ValueError(f"unknown sequent system {name!r}")
    return _SYSTEM_ALIASES[key]


class RuleId(str, enum.Enum):
    AX_ATOM = "ax-atom"
    AX_BOT = "ax-bot"
    WL = "weaken-l"
    WR = "weaken-r"
    CL = "contract-l"
    CR = "contract-r"
    AND_L = "and-l"
    AND_R = "and-r"
    OR_L = "or-l"
    OR_R = "or-r"
    IMP_L = "imp-l"
    IMP_R = "imp-r"
    BOX_L = "box-l"
    BOX_R = "box-r"
    V_R = "v-r"
    INTERACTION = "interaction"
    WIE = "wie"

    @property
    def structural(self) -> bool:
        return self in (RuleId.WL, RuleId.WR, RuleId.CL, RuleId.CR)


LEFT_RULES = {
    RuleId.WL: None,
    RuleId.CL: None,
    RuleId.AND_L: And,
    RuleId.OR_L: Or,
    RuleId.IMP_L: Implies,
    RuleId.BOX_L: Box,
    RuleId.INTERACTION: Box,
}
RIGHT_RULES = {
    RuleId.WR: None,
    RuleId.CR: None,
    RuleId.AND_R: And,
    RuleId.OR_R: Or,
    RuleId.IMP_R: Implies,
    RuleId.BOX_R: Box,
    RuleId.V_R: Ver,
}


@dataclass(frozen=True)
class Sequent:
    ante: tuple[Formula, ...] = ()
    succ: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ante", tuple(self.ante))
        object.__setattr__(self, "succ", tuple(self.succ))

    def side(self, s: str) -> tuple[Formula, ...]:
        return self.ante if s == L else self.succ

    def same(self, other: "Sequent") -> bool:
        """Multiset equality."""
        return Counter(self.ante) == Counter(other.ante) and Counter(self.succ) == Counter(other.succ)

    def kernel(self) -> tuple[frozenset, frozenset]:
        return frozenset(self.ante), frozenset(self.succ)

    def formulas(self) -> Iterator[Formula]:
        yield from self.ante
        yield from self.succ

    def __str__(self) -> str:
        return sequent_to_string(self.ante, self.succ)


@dataclass(frozen=True, eq=False)
class SNode:
    """One rule application; `principal` is (side, index) in the conclusion."""

    sequent: Sequent
    rule: RuleId
    principal: tuple[str, int] | None = None
    premises: tuple["SNode", ...] = ()

    def __repr__(self):
        return f"<{self.rule.value} {self.sequent}>"


def nodes_of(root: SNode) -> list[SNode]:
    """Distinct nodes, premises before conclusions."""
    seen: set[int] = set()
    out: list[SNode] = []
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
        for p in reversed(node.premises):
            if id(p) not in seen:
                stack.append((p, False))
    return out


def tree_size(root: SNode) -> int:
    return len(nodes_of(root))


def height(root: SNode) -> int:
    h: dict[int, int] = {}
    for n in nodes_of(root):
        h[id(n)] = 1 + max((h[id(p)] for p in n.premises), default=0)
    return h[id(root)]


def weaken_to(conclusion: Sequent, node: SNode) -> SNode:
    """Extend `node` by weakenings until it concludes exactly `conclusion`."""
    chain = []
    cur = conclusion
    for side in (L, R):
        extra = Counter(cur.side(side)) - Counter(node.sequent.side(side))
        for f, k in extra.items():
            for _ in range(k):
                items = cur.side(side)
                i = len(items) - 1 - items[::-1].index(f)
                chain.append((cur, side, i))
                rest = items[:i] + items[i + 1 :]
                cur = Sequent(rest, cur.succ) if side == L else Sequent(cur.ante, rest)
    if Counter(cur.ante) != Counter(node.sequent.ante) or Counter(cur.succ) != Counter(node.sequent.succ):
        raise ValueError("the derived sequent is not a sub-multiset of the target")
    if not chain:
        return _reorder(conclusion, node)
    out = node
    for seq, side, i in reversed(chain):
        out = SNode(seq, RuleId.WL if side == L else RuleId.WR, (side, i), (out,))
    return out


def _reorder(conclusion: Sequent, node: SNode) -> SNode:
    """The same rule application with its conclusion listed in another order."""
    if node.sequent == conclusion:
        return node
    principal = node.principal
    if principal is not None:
        side, i = principal
        items = node.sequent.side(side)
        rank = items[:i].count(items[i])
        hits = [j for j, f in enumerate(conclusion.side(side)) if f is items[i]]
        principal = (side, hits[rank])
    return SNode(conclusion, node.rule, principal, node.premises)


# ----------------------------------------------------------- rule tables


class RuleError(ValueError):
    pass


Expected = tuple[list[tuple[Formula, Link | None]], list[tuple[Formula, Link | None]]]


def _ctx(seq: Sequent, side: str, skip: int | None = None) -> list[tuple[Formula, Link]]:
    return [(f, (side, i, ())) for i, f in enumerate(seq.side(side)) if i != skip]


def expected_premises(c: Sequent, rule: RuleId, principal: tuple[str, int] | None) -> list[Expected]:
    """The premises `rule` needs to yield `c`, with the link of every formula."""
    if rule is RuleId.AX_ATOM:
        if len(c.ante) == 1 and len(c.succ) == 1 and type(c.ante[0]) is Atom and c.ante[0] is c.succ[0]:
            return []
        raise RuleError("an atomic axiom reads P => P for an atom P")
    if rule is RuleId.AX_BOT:
        if c.ante == (BOT,) and not c.succ:
            return []
        raise RuleError("the falsum axiom reads _|_ =>")
    if rule is RuleId.WIE:
        if c.succ:
            raise RuleError("weak inconsistency elimination needs an empty succedent")
        return [(_ctx(c, L), [(Box(Ver(BOT)), None)])]

    if principal is None:
        raise RuleError("rule needs a principal formula")
    side, i = principal
    want_side = L if rule in LEFT_RULES else R
    if side != want_side:
        raise RuleError(f"principal formula must be on the {'left' if want_side == L else 'right'}")
    formulas = c.side(side)
    if not 0 <= i < len(formulas):
        raise RuleError("principal index out of range")
    f = formulas[i]
    shape = LEFT_RULES.get(rule) if side == L else RIGHT_RULES.get(rule)
    if shape is not None and type(f) is not shape:
        raise RuleError(f"principal formula must be a {shape.__name__}")
    here = (side, i)

    def sub(k: int) -> Link:
        return (side, i, (k,))

    if rule is RuleId.WL:
        return [(_ctx(c, L, i), _ctx(c, R))]
    if rule is RuleId.WR:
        return [(_ctx(c, L), _ctx(c, R, i))]
    if rule is RuleId.CL:
        return [(_ctx(c, L) + [(f, (*here, ()))], _ctx(c, R))]
    if rule is RuleId.CR:
        return [(_ctx(c, L), _ctx(c, R) + [(f, (*here, ()))])]
    if rule is RuleId.AND_L:
        return [(_ctx(c, L, i) + [(f.left, sub(0)), (f.right, sub(1))], _ctx(c, R))]
    if rule is RuleId.AND_R:
        return [
            (_ctx(c, L), _ctx(c, R, i) + [(f.left, sub(0))]),
            (_ctx(c, L), _ctx(c, R, i) + [(f.right, sub(1))]),
        ]
    if rule is RuleId.OR_L:
        return [
            (_ctx(c, L, i) + [(f.left, sub(0))], _ctx(c, R)),
            (_ctx(c, L, i) + [(f.right, sub(1))], _ctx(c, R)),
        ]
    if rule is RuleId.OR_R:
        return [(_ctx(c, L), _ctx(c, R, i) + [(f.left, sub(0)), (f.right, sub(1))])]
    if rule is RuleId.IMP_L:
        return [
            (_ctx(c, L, i), _ctx(c, R) + [(f.left, sub(0))]),
            (_ctx(c, L, i) + [(f.right, sub(1))], _ctx(c, R)),
        ]
    if rule is RuleId.IMP_R:
        return [(_ctx(c, L) + [(f.left, sub(0))], _ctx(c, R, i) + [(f.right, sub(1))])]
    if rule is RuleId.BOX_L:
        return [(_ctx(c, L, i) + [(f.body, sub(0))], _ctx(c, R))]
    if rule is RuleId.INTERACTION:
        # premise VX, conclusion []X: bodies line up at the same paths
        return [(_ctx(c, L, i) + [(Ver(f.body), (*here, ()))], _ctx(c, R))]
    if rule is RuleId.BOX_R:
        if len(c.succ) != 1:
            raise RuleError("box introduction needs a single succedent formula")
        if any(type(g) is not Box for g in c.ante):
            raise RuleError("box introduction needs a fully boxed antecedent")
        return [(_ctx(c, L), [(f.body, sub(0))])]
    if rule is RuleId.V_R:
        if len(c.succ) != 1:
            raise RuleError("V introduction needs a single succedent formula")
        ante = []
        for k, g in enumerate(c.ante):
            if type(g) is Box:
                ante.append((g, (L, k, ())))
            elif type(g) is Ver:
                ante.append((g.body, (L, k, (0,))))
            else:
                raise RuleError("V introduction needs an antecedent of boxed and V formulas only")
        return [(ante, [(f.body, sub(0))])]
    raise RuleError(f"unknown rule {rule}")


def match_premise(actual: Sequent, expected: Expected) -> dict[tuple[str, int], Link | None] | None:
    """Pair each premise occurrence with its expected entry, or None on mismatch.

    The k-th occurrence of a formula pairs with the k-th expected entry for
    it, so active formulas (listed last) take the last occurrences.
    """
    out: dict[tuple[str, int], Link | None] = {}
    for side, exp in ((L, expected[0]), (R, expected[1])):
        have = actual.side(side)
        if len(have) != len(exp):
            return None
        queues: dict[Formula, list] = {}
        for f, link in exp:
            queues.setdefault(f, []).append(link)
        used: Counter = Counter()
        for k, f in enumerate(have):
            q = queues.get(f)
            if q is None or used[f] >= len(q):
                return None
            out[(side, k)] = q[used[f]]
            used[f] += 1
    return out


@dataclass
class RuleVerdict:
    ok: bool
    reason: str = ""
    principal: tuple[str, int] | None = None
    links: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _candidates(c: Sequent, rule: RuleId) -> list[tuple[str, int] | None]:
    if rule in (RuleId.AX_ATOM, RuleId.AX_BOT, RuleId.WIE):
        return [None]
    side = L if rule in LEFT_RULES else R
    return [(side, i) for i in range(len(c.side(side)))]


def check_rule_application(
    conclusion: Sequent,
    rule: RuleId | str,
    premises: Sequence[Sequent],
    system: SequentSystem | str = SequentSystem.S4V_G,
    principal: tuple[str, int] | None = None,
) -> RuleVerdict:
    """Does `rule` take `premises` to `conclusion`?  Without a principal every candidate is tried."""
    system = sequent_system(system)
    rule = RuleId(rule)
    for seq in (conclusion, *premises):
        if not all(in_language(f, Language.MODAL) for f in seq.formulas()):
            return RuleVerdict(False, "formula outside the modal language")
    if rule is RuleId.WIE and not system.has_wie:
        return RuleVerdict(False, f"weak inconsistency elimination is not a rule of {system.value}")
    cands = [principal] if principal is not None else _candidates(conclusion, rule)
    reason = "no principal formula fits"
    for cand in cands:
        try:
            exp = expected_premises(conclusion, rule, cand)
        except RuleError as e:
            reason = str(e)
            continue
        if len(exp) != len(premises):
            reason = f"expected {len(exp)} premise(s), got {len(premises)}"
            continue
        links = [match_premise(p, e) for p, e in zip(premises, exp)]
        if all(m is not None for m in links):
            return RuleVerdict(True, "", cand, links)
        reason = "premise does not match what the rule prescribes"
    return RuleVerdict(False, reason)


@dataclass
class DerivationVerdict:
    ok: bool
    path: tuple[int, ...] = ()  # premise indices from the root to the failing node
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_derivation(root: SNode, system: SequentSystem | str = SequentSystem.S4V_G) -> DerivationVerdict:
    system = sequent_system(system)
    verdicts: dict[int, RuleVerdict] = {}
    stack: list[tuple[SNode, tuple[int, ...]]] = [(root, ())]
    while stack:
        node, path = stack.pop()
        if id(node) in verdicts:
            continue
        v = check_rule_application(
            node.sequent, node.rule, [p.sequent for p in node.premises], system, node.principal
        )
        verdicts[id(node)] = v
        if not v:
            return DerivationVerdict(False, path, f"{node.rule.value} at {node.sequent}: {v.reason}")
        for k in reversed(range(len(node.premises))):
            stack.append((node.premises[k], path + (k,)))
    return DerivationVerdict(True)


def node_links(node: SNode, system: SequentSystem | str = SequentSystem.S4V_G) -> list[dict]:
    v = check_rule_application(node.sequent, node.rule, [p.sequent for p in node.premises], system, node.principal)
    if not v:
        raise RuleError(v.reason)
    return v.links
