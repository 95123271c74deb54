import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ielkit.formula import App, Bang, Const, Evid, Implies, Var, Ver, conj, is_ground
from ielkit.generators import random_derivation, random_hypothetical_derivation
from ielkit.hilbert import (
    DeductionError,
    NotATautology,
    ax_nec,
    axiom,
    box_nec,
    check_derivation,
    cs_line,
    deduction,
    derive,
    hyp,
    internalize,
    linearize,
    match_axiom,
    matching_schemas,
    mp,
    v_lift,
    validate_cs,
)
from ielkit.syntax import LanguageError, parse


def P(s):
    return parse(s)


# ------------------------------------------------------------------ schemas


def test_match_axiom_examples():
    assert match_axiom(P("V(p -> q) -> V p -> V q"), "s4vminus") == "A1"
    assert match_axiom(P("x:p -> V p"), "lpvminus") == "E6"
    assert match_axiom(P("V p -> p"), "s4v") is None


def test_match_axiom_language_mismatch():
    with pytest.raises(LanguageError):
        match_axiom(P("K p -> p"), "lpv")


def test_first_match_wins_and_all_matches_listed():
    f = P("(p -> p) -> (p -> p) -> p -> p")
    found = matching_schemas(f, "iel")
    assert match_axiom(f, "iel") == found[0] and len(found) >= 1


def test_validate_cs_examples():
    assert validate_cs([("c", P("p -> q -> p"))], "lpv").ok
    bad = validate_cs([("c", P("V p -> p"))], "lpv")
    assert not bad.ok and bad.offending[0][0] == "c"
    assert validate_cs([], "lpv").ok


def test_injective_constants():
    cs = [("c", P("p -> q -> p")), ("c", P("q -> p -> q"))]
    assert validate_cs(cs, "lpv").ok
    assert not validate_cs(cs, "lpv", injective=True).ok


# ------------------------------------------------------------------ checker


def test_check_examples():
    d = [hyp(P("p")), axiom(P("p -> K p"), "IE2"), mp(1, 2)]
    res = check_derivation(d, "ielminus")
    assert res.ok and res.conclusion is P("K p")

    res = check_derivation([axiom(P("K p -> p"))], "iel")
    assert not res.ok and "no schema matches" in res.describe()

    a = P("p -> q -> p")
    d = [axiom(a, "P1"), ax_nec(1, "c"), axiom(P("c:(p -> q -> p) -> !c:c:(p -> q -> p)"), "E3"), mp(2, 3)]
    res = check_derivation(d, "lpvminus")
    assert res.ok and list(res.used_cs) == [("c", a)]


def test_checker_rejections():
    # necessitation under an open hypothesis
    assert not check_derivation([hyp(P("p")), box_nec(1)], "s4v").ok
    # axiom necessitation needs an axiom line
    assert not check_derivation([hyp(P("p")), ax_nec(1, "c")], "lpv").ok
    # cs mode replaces the rule by the specification
    d = [axiom(P("p -> q -> p"), "P1"), ax_nec(1, "c")]
    assert check_derivation(d, "lpv").ok
    assert not check_derivation(d, "lpv", mode="cs").ok
    cs = [("c", P("p -> q -> p"))]
    assert check_derivation([cs_line("c", P("p -> q -> p"))], "lpv", cs, mode="cs").ok
    assert not check_derivation([cs_line("c", P("q -> q -> q"))], "lpv", cs, mode="cs").ok
    # forward reference, wrong schema label, E7 outside LPV
    assert not check_derivation([mp(1, 2)], "lpv").ok
    assert not check_derivation([axiom(P("p -> q -> p"), "P2")], "lpv").ok
    assert not check_derivation([axiom(P("~x:V _|_"))], "lpvminus").ok
    assert check_derivation([axiom(P("~x:V _|_"))], "lpv").ok


# ----------------------------------------------------------- internalization


def test_internalize_axiom():
    a = P("p -> q -> p")
    out = internalize([axiom(a, "P1")], "lpvminus", mode="cs")
    assert type(out.term) is Const and out.conclusion is Evid(out.term, a)
    assert (out.term.name, a) in out.cs
    assert check_derivation(out.derivation, "lpvminus", out.cs, mode="cs").ok


def test_internalize_quoted_hypothesis():
    out = internalize([hyp(P("y:q"))], "lpvminus", variables={})
    assert out.term is Bang(Var("y"))
    assert out.conclusion is P("!y:y:q")
    assert check_derivation(out.derivation, "lpvminus").ok


def test_internalize_modus_ponens():
    d = [hyp(P("p -> q")), hyp(P("p")), mp(1, 2)]
    out = internalize(d, "lpvminus", variables={P("p -> q"): Var("x2"), P("p"): Var("x1")})
    assert out.term is App(Var("x2"), Var("x1"))
    assert check_derivation(out.derivation, "lpvminus").ok
    hyps = {line.formula for line in out.derivation if type(line.just).__name__ == "Hyp"}
    assert hyps == {P("x2:(p -> q)"), P("x1:p")}


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["rule", "cs"]))
def test_internalization_contract(seed, mode):
    g = random_derivation(random.Random(seed), "lpvminus", mode=mode)
    out = internalize(g.lines, g.system, g.cs, mode)
    assert is_ground(out.term)
    assert out.conclusion is Evid(out.term, g.conclusion)
    assert check_derivation(out.derivation, g.system, out.cs, mode).ok


# --------------------------------------------------------------------- v_lift


def test_v_lift_empty_contexts():
    d = linearize(derive(P("p -> p")))
    out = v_lift(d, "lpvminus")
    assert out.conclusion is Ver(P("p -> p"))
    assert check_derivation(out.derivation, "lpvminus").ok


@pytest.mark.parametrize(
    "theta, gamma, x, expect",
    [
        ([], ["p"], "p", "V p -> V p"),
        ([], ["p", "q"], "p", "V p & V q -> V p"),
        (["x:p"], ["q"], "q & x:p", "x:p & V q -> V(q & x:p)"),
    ],
)
def test_v_lift_with_contexts(theta, gamma, x, expect):
    th, ga = [P(s) for s in theta], [P(s) for s in gamma]
    d = linearize(derive(Implies(conj(th + ga), P(x))))
    out = v_lift(d, "lpvminus", th, ga)
    assert out.conclusion is P(expect)
    assert check_derivation(out.derivation, "lpvminus").ok


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_v_lift_is_v_necessitation(seed):
    g = random_derivation(random.Random(seed), "lpvminus", mode="cs")
    out = v_lift(g.lines, g.system, cs=g.cs, mode="cs")
    assert out.conclusion is Ver(g.conclusion)
    assert check_derivation(out.derivation, g.system, out.cs, mode="cs").ok


# ------------------------------------------------------------------ deduction


def test_deduction_examples():
    out = deduction([hyp(P("p"))], "iel")
    assert out[-1].formula is P("p -> p") and check_derivation(out, "iel").ok

    d = [hyp(P("p")), axiom(P("p -> K p"), "IE2"), mp(1, 2)]
    out = deduction(d, "ielminus")
    assert [line.formula for line in out] == [P("p -> K p")]

    d = [hyp(P("p")), hyp(P("p -> q")), mp(1, 2)]
    out = deduction(d, "iel", hypothesis=P("p"))
    res = check_derivation(out, "iel")
    assert res.ok and res.conclusion is P("p -> q")
    assert [line.formula for line in out if type(line.just).__name__ == "Hyp"] == [P("p -> q")]


def test_deduction_errors():
    with pytest.raises(DeductionError):
        deduction([axiom(P("p -> q -> p"))], "iel")
    with pytest.raises(DeductionError):
        deduction([hyp(P("p"))], "iel", hypothesis=P("q"))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["lpvminus", "lpv", "s4v"]))
def test_deduction_round_trip(seed, system):
    g = random_hypothetical_derivation(random.Random(seed), system)
    (a,) = g.hypotheses
    out = deduction(g.lines, system, a, g.cs, g.mode)
    assert out[-1].formula is Implies(a, g.conclusion)
    again = list(out) + [hyp(a), mp(len(out) + 1, len(out))]
    res = check_derivation(again, system, g.cs, g.mode)
    assert res.ok and res.conclusion is g.conclusion


# -------------------------------------------------------------------- tableau


@pytest.mark.parametrize(
    "s",
    ["p | ~p", "((p -> q) -> p) -> p", "x:p & V q -> V q & x:p", "~(p & ~p)", "(p -> q) | (q -> p)"],
)
def test_tableau_proves_tautologies(s):
    proof = derive(P(s))
    assert proof.formula is P(s) and check_derivation(linearize(proof), "lpv").ok


def test_tableau_rejects_non_tautology():
    with pytest.raises(NotATautology):
        derive(P("p -> q"))
