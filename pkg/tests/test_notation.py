from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dayfour.notation import (Braces, Dyadic, Integer, Nimber, NotationError, NumberStar,
                              PlusMinus, Tiny, Up, game, parse, to_text)


@pytest.mark.parametrize("text, expr", [
    ("0", Integer(0)),
    ("-3", Integer(-3)),
    ("3/4", Dyadic(3, 2)),
    ("*", Nimber(1)),
    ("*2", Nimber(2)),
    ("^", Up()),
    ("1*", NumberStar(Integer(1), 1)),
    ("+-1", PlusMinus(Integer(1))),
    ("+-({1|0})", PlusMinus(Braces((Integer(1),), (Integer(0),)))),
    ("tiny(1)", Tiny(Integer(1))),
    ("{ 0 , * | }", Braces((Integer(0), Nimber(1)), ())),
    ("{|}", Braces((), ())),
])
def test_parse(text, expr):
    assert parse(text) == expr


@pytest.mark.parametrize("text, fragment", [
    ("{0|1|2}", "nested '|'"),
    ("1/3", "power of two"),
    ("{0|", "expected"),
    ("", "end of input"),
    ("0 0", "trailing"),
    ("+-+-1", "parenthesized"),
    ("&", "unexpected character"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(NotationError, match=fragment):
        parse(text)


def test_error_reports_position():
    with pytest.raises(NotationError) as info:
        parse("{0|1|2}")
    assert info.value.pos == 4


@pytest.mark.parametrize("text, printed", [
    ("tiny(1)", "{0|{0|-1}}"),
    ("{2|1,1*}", "{2|1,1*}"),
    ("{1/2|1/2}", "1/2*"),
    ("{1|1}", "1*"),
    ("{0,*|0,*}", "*2"),
    ("{1,1*|1,1*}", "1*2"),
    ("{0|*}", "^"),
    ("{*|0}", "v"),
    ("{0|0,*}", "v*"),
    ("{1/2|-1/2}", "+-1/2"),
    ("{*|*}", "0"),
])
def test_print(arena, text, printed):
    assert to_text(arena, game(text, arena)) == printed


def test_birthday_of_printed_form(arena):
    assert arena.birthday(game("{2|1,1*}", arena)) == 3


def test_negate_prints(arena):
    assert to_text(arena, arena.negate(game("1/2", arena))) == "-1/2"
    assert to_text(arena, arena.negate(game("^", arena))) == "v"


def test_day2_strings_distinct(day2):
    texts = day2.texts()
    assert len(texts) == len(set(texts)) == 22


def test_round_trip_day3(arena, day3):
    for x in day3.elements:
        assert game(to_text(arena, x), arena) == x


dyadics = st.builds(lambda p, k: Fraction(p, 2 ** k),
                    st.integers(-40, 40), st.integers(0, 4))


@given(dyadics)
def test_number_round_trip(arena, x):
    text = str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    assert to_text(arena, game(text, arena)) == text


@given(dyadics, dyadics)
def test_numbers_ordered_like_rationals(arena, x, y):
    def make(v):
        return game(f"{v.numerator}/{v.denominator}" if v.denominator > 1 else str(v.numerator),
                    arena)
    assert arena.leq(make(x), make(y)) == (x <= y)


@settings(max_examples=200)
@given(st.data())
def test_braces_of_printed_options_round_trip(arena, day3, data):
    x = data.draw(st.sampled_from(day3.elements))
    raw = ("{" + ",".join(to_text(arena, o) for o in arena.left(x)) + "|"
           + ",".join(to_text(arena, o) for o in arena.right(x)) + "}")
    assert game(raw, arena) == x


@given(st.text(alphabet="{}|,*^v+-()0123/ ", max_size=12))
def test_parser_never_crashes(text):
    try:
        parse(text)
    except NotationError:
        pass
