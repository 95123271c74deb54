"""JSON documents for formulas, Hilbert derivations, sequent derivations and realizations.

Formulas travel as ASCII strings in the printer's syntax.  Proof-term names
follow the parser's default convention (u..z variables, other letters
constants); documents list any name that breaks the convention so that
reading them back is exact.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

from .formula import Formula, formula_consts, formula_vars
from .hilbert.derivation import (
    MP,
    AxNec,
    Axiom,
    BoxNec,
    ConstantSpecification,
    CSRef,
    Hyp,
    Line,
)
from .realize.realizer import RealizationResult
from .sequent.core import RuleId, Sequent, SNode, nodes_of
from .syntax import default_is_variable, parse, print_term, to_string


class DocumentError(ValueError):
    pass


# ------------------------------------------------------------------ formulas


def _names(formulas: Iterable[Formula]) -> dict[str, list[str]]:
    odd_vars, odd_consts = set(), set()
    for f in formulas:
        odd_vars |= {v for v in formula_vars(f) if not default_is_variable(v)}
        odd_consts |= {c for c in formula_consts(f) if default_is_variable(c)}
    out = {}
    if odd_vars:
        out["variables"] = sorted(odd_vars)
    if odd_consts:
        out["constants"] = sorted(odd_consts)
    return out


class _Reader:
    def __init__(self, doc: dict):
        self.variables = doc.get("variables", ())
        self.constants = doc.get("constants", ())
        self.memo: dict[str, Formula] = {}

    def formula(self, text: str) -> Formula:
        f = self.memo.get(text)
        if f is None:
            f = self.memo[text] = parse(text, variables=self.variables, constants=self.constants)
        return f


# ------------------------------------------------------------- Hilbert lines


def _just_to_doc(j) -> dict:
    if isinstance(j, Hyp):
        return {"rule": "hyp"}
    if isinstance(j, Axiom):
        return {"rule": "axiom", "schema": j.schema}
    if isinstance(j, CSRef):
        return {"rule": "cs", "constant": j.constant}
    if isinstance(j, MP):
        return {"rule": "mp", "premises": [j.first, j.second]}
    if isinstance(j, BoxNec):
        return {"rule": "box-nec", "premise": j.premise}
    if isinstance(j, AxNec):
        return {"rule": "axiom-nec", "premise": j.premise, "constant": j.constant}
    raise TypeError(j)


def _just_from_doc(d: dict):
    rule = d.get("rule")
    try:
        if rule == "hyp":
            return Hyp()
        if rule == "axiom":
            return Axiom(d.get("schema"))
        if rule == "cs":
            return CSRef(str(d["constant"]))
        if rule == "mp":
            a, b = d["premises"]
            return MP(int(a), int(b))
        if rule == "box-nec":
            return BoxNec(int(d["premise"]))
        if rule == "axiom-nec":
            return AxNec(int(d["premise"]), str(d["constant"]))
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"malformed justification {d!r}") from e
    raise DocumentError(f"unknown justification rule {rule!r}")


def cs_to_doc(cs: Iterable[tuple[str, Formula]]) -> list[dict]:
    return [{"constant": c, "formula": to_string(f)} for c, f in cs]


def hilbert_to_doc(
    lines: Sequence[Line], system: str | None = None, cs: Iterable[tuple[str, Formula]] = (), mode: str = "rule"
) -> dict:
    cs = tuple(cs)
    formulas = [ln.formula for ln in lines if ln.formula is not None] + [f for _, f in cs]
    doc: dict[str, Any] = {"kind": "hilbert"}
    if system is not None:
        doc["system"] = getattr(system, "value", system)
    doc["mode"] = mode
    doc.update(_names(formulas))
    doc["cs"] = cs_to_doc(cs)
    doc["lines"] = [
        {
            "index": n,
            "justification": _just_to_doc(ln.just),
            "formula": None if ln.formula is None else to_string(ln.formula),
        }
        for n, ln in enumerate(lines, start=1)
    ]
    return doc


def hilbert_from_doc(doc: dict) -> tuple[tuple[Line, ...], ConstantSpecification]:
    if doc.get("kind", "hilbert") != "hilbert" or "lines" not in doc:
        raise DocumentError("not a Hilbert derivation document")
    read = _Reader(doc)
    lines = []
    for n, rec in enumerate(doc["lines"], start=1):
        if rec.get("index", n) != n:
            raise DocumentError(f"line {n} carries index {rec.get('index')}")
        text = rec.get("formula")
        lines.append(Line(None if text is None else read.formula(text), _just_from_doc(rec["justification"])))
    cs = ConstantSpecification.of((e["constant"], read.formula(e["formula"])) for e in doc.get("cs", ()))
    return tuple(lines), cs


def cs_from_doc(doc: dict | list) -> ConstantSpecification:
    entries = doc.get("cs", doc.get("entries", ())) if isinstance(doc, dict) else doc
    read = _Reader(doc if isinstance(doc, dict) else {})
    return ConstantSpecification.of((e["constant"], read.formula(e["formula"])) for e in entries)


# ------------------------------------------------------------ sequent trees


def sequent_to_doc(root: SNode, system: str | None = None) -> dict:
    nodes = nodes_of(root)
    number = {id(n): k for k, n in enumerate(nodes)}
    doc: dict[str, Any] = {"kind": "sequent"}
    if system is not None:
        doc["system"] = getattr(system, "value", system)
    doc.update(_names(f for n in nodes for f in n.sequent.formulas()))
    doc["root"] = number[id(root)]
    doc["nodes"] = [
        {
            "id": k,
            "ante": [to_string(f) for f in n.sequent.ante],
            "succ": [to_string(f) for f in n.sequent.succ],
            "rule": n.rule.value,
            "principal": None if n.principal is None else list(n.principal),
            "premises": [number[id(p)] for p in n.premises],
        }
        for k, n in enumerate(nodes)
    ]
    return doc


def sequent_from_doc(doc: dict) -> SNode:
    if doc.get("kind", "sequent") != "sequent" or "nodes" not in doc:
        raise DocumentError("not a sequent derivation document")
    read = _Reader(doc)
    recs = {rec["id"]: rec for rec in doc["nodes"]}
    built: dict[int, SNode] = {}
    # premises must be listed before the nodes that use them
    for rec in doc["nodes"]:
        try:
            premises = tuple(built[i] for i in rec.get("premises", ()))
        except KeyError as e:
            raise DocumentError(f"node {rec['id']} refers to a later or missing node {e.args[0]}") from e
        try:
            rule = RuleId(rec["rule"])
        except ValueError as e:
            raise DocumentError(f"unknown rule {rec['rule']!r}") from e
        principal = rec.get("principal")
        if principal is not None:
            principal = (str(principal[0]), int(principal[1]))
        seq = Sequent(tuple(read.formula(s) for s in rec["ante"]), tuple(read.formula(s) for s in rec["succ"]))
        built[rec["id"]] = SNode(seq, rule, principal, premises)
    root = doc.get("root", doc["nodes"][-1]["id"] if doc["nodes"] else None)
    if root not in recs:
        raise DocumentError("missing root node")
    return built[root]


# --------------------------------------------------------------- realization


def realization_to_doc(r: RealizationResult) -> dict:
    return {
        "kind": "realization",
        "formula": to_string(r.formula),
        "system": r.system.value,
        "families": [
            {
                "id": fam.id,
                "polarity": fam.polarity.name.lower(),
                "essential": fam.essential,
                "n_f": fam.n_f,
                "members": len(fam.members),
                "term": print_term(r.terms[fam.id]),
            }
            for fam in r.families
        ],
        "substitutions": [{"variable": v, "term": print_term(t)} for v, t in r.substitutions],
        "witness": hilbert_to_doc(r.witness, r.system, r.cs, r.mode),
    }
