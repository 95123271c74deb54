import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ielkit.formula import (
    BOT,
    And,
    Atom,
    Bang,
    Box,
    Evid,
    Implies,
    Know,
    Language,
    Plus,
    Polarity,
    Var,
    Ver,
    box_positions,
    in_language,
    is_ground,
    language_of,
    polarity_of,
)
from ielkit.generators import random_formula
from ielkit.syntax import LanguageError, ParseError, parse, parse_sequent, to_string

p, q = Atom("p"), Atom("q")


def test_parse_examples():
    assert parse("K (p -> q)", "iel") is Know(Implies(p, q))
    f = parse("(x + !y):(p & ~q)", "explicit")
    assert f is Evid(Plus(Var("x"), Bang(Var("y"))), And(p, Implies(q, BOT)))
    with pytest.raises(LanguageError):
        parse("[]p -> V p", "iel")


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as err:
        parse("p & -> q")
    assert err.value.pos == 4
    with pytest.raises(ParseError):
        parse("p q")


def test_unicode_aliases():
    assert parse("□p → V p") is parse("[]p -> V p")
    assert parse("¬⊥ ∧ p ∨ q") is parse("~_|_ & p | q")


def test_print_examples():
    assert to_string(Know(p)) == "K p"
    assert to_string(Implies(Box(p), Ver(p))) == "[]p -> V p"
    assert to_string(Implies(p, BOT)) == "~p"


def test_precedence_and_associativity():
    assert parse("p -> q -> p") is Implies(p, Implies(q, p))
    assert parse("p & q | p") is parse("(p & q) | p")
    assert parse("x:p -> p") is Implies(Evid(Var("x"), p), p)
    assert to_string(parse("(p -> q) -> p")) == "(p -> q) -> p"


def test_sequent_syntax():
    ante, succ = parse_sequent("[]p, q => V q")
    assert ante == (Box(p), q) and succ == (Ver(q),)
    assert parse_sequent("=>") == ((), ())


def test_polarity_examples():
    assert polarity_of(Implies(Box(p), q), (0,)) is Polarity.NEGATIVE
    assert polarity_of(Box(Box(p)), (0,)) is Polarity.POSITIVE
    nnbox = Implies(Implies(Box(p), BOT), BOT)
    assert polarity_of(nnbox, (0, 0)) is Polarity.POSITIVE


def test_language_membership():
    assert in_language(parse("K p -> p"), Language.IEL)
    assert not in_language(parse("K p -> []p"), Language.MODAL)
    assert language_of(parse("x:p")) is Language.EXPLICIT
    assert is_ground(parse("(a * !b):p").term)
    assert not is_ground(parse("(a * x):p").term)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(list(Language)))
def test_round_trip(seed, lang):
    f = random_formula(random.Random(seed), lang, depth=8)
    assert parse(to_string(f), lang) is f
    assert parse(to_string(f, unicode=True), lang) is f


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_negation_flips_every_box(seed):
    f = random_formula(random.Random(seed), Language.MODAL, depth=6)
    g = Implies(f, BOT)
    for pos in box_positions(f):
        assert polarity_of(g, (0,) + pos) is polarity_of(f, pos).flip()
