import random

import pytest

from ielkit.formula import Polarity, Var, formula_vars, is_ground
from ielkit.generators import random_derivation
from ielkit.hilbert import Axiom, check_derivation
from ielkit.realize import (
    AnnotationError,
    NotProved,
    annotate_boxes,
    compute_families,
    realize,
    realize_iel,
)
from ielkit.sequent import L, R, Outcome, RuleId, Sequent, SNode, prove, prove_formula
from ielkit.syntax import parse, parse_sequent, to_string
from ielkit.translate import forgetful_projection, godel_tr


def P(s):
    return parse(s)


def S(text):
    return Sequent(*parse_sequent(text))


def _families(root, system="s4vg"):
    return compute_families(annotate_boxes(root, system))


# -------------------------------------------------------------- annotation


def test_annotate_without_boxes():
    ann = annotate_boxes(SNode(S("p => p"), RuleId.AX_ATOM))
    assert ann.index == {} and ann.related == []


def test_annotate_box_branch():
    leaf = SNode(S("p => p"), RuleId.AX_ATOM)
    box_l = SNode(S("[]p => p"), RuleId.BOX_L, (L, 0), (leaf,))
    root = SNode(S("[]p => []p"), RuleId.BOX_R, (R, 0), (box_l,))
    ann = annotate_boxes(root)
    assert len(ann.index) == 3
    # the antecedent box is correlated down the branch, the succedent box is new at the root
    assert ((0 + 1, L, 0, ()), (2, L, 0, ())) in ann.related
    assert ann.introduced == [(2, R, 0, ())]
    fams = compute_families(ann)
    assert sorted((f.polarity.value, f.essential) for f in fams) == [("+", True), ("-", False)]


def test_contraction_correlates_copies():
    leaf = SNode(S("p => p"), RuleId.AX_ATOM)
    box_l = SNode(S("[]p => p"), RuleId.BOX_L, (L, 0), (leaf,))
    wl = SNode(S("[]p, []p => p"), RuleId.WL, (L, 1), (box_l,))
    root = SNode(S("[]p => p"), RuleId.CL, (L, 0), (wl,))
    (fam,) = compute_families(annotate_boxes(root))
    assert len(fam.members) == 4 and fam.polarity is Polarity.NEGATIVE


def test_annotate_rejects_bad_derivation():
    with pytest.raises(AnnotationError):
        annotate_boxes(SNode(S("[]p => []p"), RuleId.AX_ATOM))


@pytest.mark.parametrize(
    "formula, expect",
    [
        ("[]p -> V p", [("-", False, 0)]),
        ("[](p -> p)", [("+", True, 1)]),
        ("[]V p -> []V p", [("+", True, 1), ("-", False, 0)]),
    ],
)
def test_family_examples(formula, expect):
    root = prove_formula(P(formula), "s4vg").derivation
    got = sorted((f.polarity.value, f.essential, f.n_f) for f in _families(root))
    assert got == sorted(expect)


# -------------------------------------------------------------- realization


def test_realize_box_to_v():
    r = realize(prove_formula(P("[]p -> V p"), "s4vminus_g").derivation, "s4vminus_g")
    assert r.formula is P("x1:p -> V p")
    assert any(isinstance(line.just, Axiom) and line.just.schema == "E6" for line in r.witness)
    assert r.witness_ok


def test_realize_necessitated_tautology():
    r = realize(prove_formula(P("[](p -> p)"), "s4vg").derivation, "s4vg")
    assert is_ground(r.formula.term) and r.formula.body is P("p -> p")
    assert check_derivation(r.witness, "lpv").ok


def test_realize_distribution_is_normal():
    tr = godel_tr(P("K(p -> q) -> K p -> K q"))
    r = realize(prove_formula(tr, "s4vminus_g").derivation, "s4vminus_g")
    assert forgetful_projection(r.formula) is tr
    negative = [r.terms[f.id] for f in r.families if f.polarity is Polarity.NEGATIVE]
    assert all(type(t) is Var for t in negative)
    assert len(set(negative)) == len(negative)
    assert not formula_vars(r.formula) & r.provisional
    assert len(r.node_formulas) == len(annotate_boxes(prove_formula(tr, "s4vminus_g").derivation).nodes)


def test_realize_iel_examples():
    r = realize_iel(P("p -> K p"), "ielminus")
    assert to_string(forgetful_projection(r.formula)) == "[]([]p -> []V[]p)"
    r = realize_iel(P("~K _|_"), "iel")
    assert to_string(forgetful_projection(r.formula)) == "[]~[]V[]_|_"
    assert any(isinstance(line.just, Axiom) and line.just.schema == "E7" for line in r.witness)
    r = realize_iel(P("K p -> p"), "iel")
    assert isinstance(r, NotProved) and r.outcome is Outcome.SATURATED


def test_cs_mode_realization():
    tr = godel_tr(P("p -> K p"))
    r = realize(prove_formula(tr, "s4vminus_g").derivation, "s4vminus_g", mode="cs")
    assert check_derivation(r.witness, "lpvminus", r.cs, mode="cs").ok and r.witness_ok
    assert r.cs and all(type(line.just).__name__ != "AxNec" for line in r.witness)


def test_realizing_sequents_with_antecedents():
    root = prove(S("[]p, [](p -> q) => V q"), "s4vminus_g").derivation
    r = realize(root, "s4vminus_g")
    assert r.witness_ok and forgetful_projection(r.formula) is P("[]p & [](p -> q) -> V q")


def test_random_derivations_realize():
    """Family invariants, projection and witness validity over random theorems."""
    rng = random.Random(11)
    for i in range(50):
        system = "lpv" if i % 2 else "lpvminus"
        seq_system = "s4vg" if i % 2 else "s4vminus_g"
        f = forgetful_projection(random_derivation(rng, system).conclusion)
        root = prove_formula(f, seq_system).derivation
        fams = _families(root, seq_system)
        members = [m for fam in fams for m in fam.members]
        assert len(members) == len(set(members))
        assert all(fam.essential == (fam.n_f >= 1) for fam in fams)
        if i < 20:
            r = realize(root, seq_system)
            assert forgetful_projection(r.formula) is f
            if seq_system == "s4vminus_g":
                assert not any(isinstance(line.just, Axiom) and line.just.schema == "E7" for line in r.witness)
