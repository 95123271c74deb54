"""Remove rule applications whose active formulas are never used above them.

Search saturates the antecedent eagerly, so found derivations carry modal
unpackings that the axioms never touch.  Trimming rebuilds the tree leaves
first; each node then proves only the sub-sequent of formula occurrences that
are actually used, and one weakening chain restores the original root.
"""

from __future__ import annotations

from .core import L, R, RuleId, Sequent, SequentSystem, SNode, expected_premises, node_links, nodes_of, weaken_to

Pos = tuple[str, int]


def _sub(seq: Sequent, used: set[Pos]) -> Sequent:
    return Sequent(
        tuple(f for i, f in enumerate(seq.ante) if (L, i) in used),
        tuple(f for i, f in enumerate(seq.succ) if (R, i) in used),
    )


def _identity_targets(node: SNode, prem: SNode, used: set[Pos], links: dict) -> set[Pos] | None:
    """Conclusion positions for `used` if the premise proves a literal sub-sequent, else None."""
    targets: set[Pos] = set()
    contraction = node.rule in (RuleId.CL, RuleId.CR)
    for side, i in used:
        link = links[(side, i)]
        if link is None or link[2] != ():
            return None
        target = (link[0], link[1])
        if target == node.principal and not contraction:
            return None
        if node.sequent.side(target[0])[target[1]] is not prem.sequent.side(side)[i]:
            return None
        if target in targets:
            return None
        targets.add(target)
    return targets


def trim(root: SNode, system: SequentSystem | str = "s4vg") -> SNode:
    done: dict[int, tuple[SNode, set[Pos]]] = {}
    for node in nodes_of(root):
        if not node.premises:
            used = {(L, i) for i in range(len(node.sequent.ante))} | {(R, i) for i in range(len(node.sequent.succ))}
            done[id(node)] = (node, used)
            continue
        links = node_links(node, system)
        results = [done[id(p)] for p in node.premises]
        skipped = None
        for prem, (new, used), link in zip(node.premises, results, links):
            targets = _identity_targets(node, prem, used, link)
            if targets is not None:
                skipped = (new, targets)
                break
        if skipped is not None:
            done[id(node)] = skipped
            continue
        keep: set[Pos] = set()
        if node.principal is not None:
            keep.add(node.principal)
        for (_, used), link in zip(results, links):
            for pos in used:
                if link[pos] is not None:
                    keep.add((link[pos][0], link[pos][1]))
        seq = _sub(node.sequent, keep)
        principal = None
        if node.principal is not None:
            side, i = node.principal
            principal = (side, sum(1 for s, j in keep if s == side and j < i))
        expected = expected_premises(seq, node.rule, principal)
        premises = []
        for (new, _), exp in zip(results, expected):
            target = Sequent(tuple(f for f, _ in exp[0]), tuple(f for f, _ in exp[1]))
            premises.append(weaken_to(target, new))
        done[id(node)] = (SNode(seq, node.rule, principal, tuple(premises)), keep)
    new_root, _ = done[id(root)]
    return weaken_to(root.sequent, new_root)
