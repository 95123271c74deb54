import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ielkit.formula import Box, Evid, Language, in_language, subformula_at, subformulas
from ielkit.generators import random_formula
from ielkit.syntax import LanguageError, parse, to_string
from ielkit.translate import forgetful_projection, godel_tr, godel_tr_trace


@pytest.mark.parametrize(
    "src, out",
    [
        ("K p", "[]V[]p"),
        ("~K _|_", "[]~[]V[]_|_"),
        ("p -> K p", "[]([]p -> []V[]p)"),
        ("p & q", "[]([]p & []q)"),
    ],
)
def test_translation_examples(src, out):
    assert to_string(godel_tr(parse(src, "iel"))) == out


@pytest.mark.parametrize(
    "src, out",
    [
        ("t:(a -> b) -> s:a -> (t * s):b", "[](a -> b) -> []a -> []b"),
        ("~t:V _|_", "~[]V_|_"),
        ("p", "p"),
    ],
)
def test_projection_examples(src, out):
    assert to_string(forgetful_projection(parse(src, "explicit"))) == out


def test_wrong_language_rejected():
    with pytest.raises(LanguageError):
        godel_tr(parse("[]p"))
    with pytest.raises(LanguageError):
        forgetful_projection(parse("K p"))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_translation_properties(seed):
    f = random_formula(random.Random(seed), Language.IEL, depth=6)
    trace = godel_tr_trace(f)
    assert in_language(trace.result, Language.MODAL)
    assert trace.replay() is trace.result
    # every source node is logged once and lands on a box
    assert len(trace.steps) == len({s.source for s in trace.steps})
    for step in trace.steps:
        assert type(subformula_at(trace.result, step.target)) is Box


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_projection_properties(seed):
    rng = random.Random(seed)
    e = random_formula(rng, Language.EXPLICIT, depth=6)
    out = forgetful_projection(e)
    assert in_language(out, Language.MODAL)
    assert not any(type(g) is Evid for g in subformulas(out))
    m = random_formula(rng, Language.MODAL, depth=6)
    if in_language(m, Language.EXPLICIT):
        assert forgetful_projection(m) is m

