"""Box occurrences of a sequent derivation and their families.

An occurrence is keyed by (node, side, index, path): the node's position in
the premises-first node list, the sequent side, the formula's index on that
side and the path of the box inside the formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from networkx.utils import UnionFind

from ..formula import Box, Polarity, box_positions, polarity_of, subformula_at
from ..sequent.core import L, R, RuleId, SequentSystem, SNode, check_derivation, node_links, nodes_of

Occurrence = tuple[int, str, int, tuple[int, ...]]


@dataclass
class Annotation:
    """Every box occurrence with an integer index and the premise-to-conclusion links."""

    root: SNode
    nodes: list[SNode]
    index: dict[Occurrence, int]
    related: list[tuple[Occurrence, Occurrence]]  # (premise occurrence, conclusion occurrence)
    introduced: list[Occurrence]  # succedent boxes created by (box-r)
    links: list[list[dict]]  # per node, per premise: premise (side, idx) -> link


@dataclass
class BoxFamily:
    id: int
    members: list[Occurrence]
    polarity: Polarity
    n_f: int
    introductions: list[int] = field(default_factory=list)  # node numbers of (box-r) introductions

    @property
    def essential(self) -> bool:
        return self.n_f >= 1


class AnnotationError(ValueError):
    pass


def annotate_boxes(root: SNode, system: SequentSystem | str = "s4vg") -> Annotation:
    verdict = check_derivation(root, system)
    if not verdict:
        raise AnnotationError(f"derivation does not check: {verdict.reason}")
    nodes = nodes_of(root)
    number = {id(n): k for k, n in enumerate(nodes)}
    index: dict[Occurrence, int] = {}
    # root first, so the root's boxes get the smallest indices
    for k in reversed(range(len(nodes))):
        seq = nodes[k].sequent
        for side in (L, R):
            for i, f in enumerate(seq.side(side)):
                for pos in box_positions(f):
                    index[(k, side, i, pos)] = len(index)
    related = []
    introduced = []
    all_links = []
    for k, node in enumerate(nodes):
        links = node_links(node, system)
        all_links.append(links)
        for prem, mapping in zip(node.premises, links):
            pk = number[id(prem)]
            for (side, i), link in mapping.items():
                if link is None:
                    continue
                cside, ci, prefix = link
                target = node.sequent.side(cside)[ci]
                for pos in box_positions(prem.sequent.side(side)[i]):
                    cpos = prefix + pos
                    if type(subformula_at(target, cpos)) is not Box:
                        raise AnnotationError("linked occurrence is not a box")
                    related.append(((pk, side, i, pos), (k, cside, ci, cpos)))
        if node.rule is RuleId.BOX_R:
            introduced.append((k, R, 0, ()))
    return Annotation(root, nodes, index, related, introduced, all_links)


def occurrence_polarity(ann: Annotation, occ: Occurrence) -> Polarity:
    k, side, i, pos = occ
    f = ann.nodes[k].sequent.side(side)[i]
    return polarity_of(f, pos, Polarity.NEGATIVE if side == L else Polarity.POSITIVE)


def compute_families(ann: Annotation) -> list[BoxFamily]:
    """Union-find closure of the relatedness links, numbered by first occurrence index."""
    uf = UnionFind(ann.index)
    for a, b in ann.related:
        uf.union(a, b)
    groups: dict[object, list[Occurrence]] = {}
    for occ in sorted(ann.index, key=ann.index.__getitem__):
        groups.setdefault(uf[occ], []).append(occ)
    intro: dict[object, list[int]] = {}
    for occ in ann.introduced:
        intro.setdefault(uf[occ], []).append(occ[0])
    families = []
    for fid, (rep, members) in enumerate(groups.items()):
        pols = {occurrence_polarity(ann, m) for m in members}
        if len(pols) != 1:
            raise AnnotationError(f"family {fid} mixes polarities")
        nodes = sorted(intro.get(rep, []))
        families.append(BoxFamily(fid, members, pols.pop(), len(nodes), nodes))
    return families
