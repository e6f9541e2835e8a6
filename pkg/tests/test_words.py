from __future__ import annotations

import pytest
from hypothesis import given
from strategies import crossing_words, square_words

from vtb.errors import NotInvertible, TypingError, WidthMismatch, WordSyntaxError
from vtb.words import (
    BraidWord,
    compose,
    embed_left,
    embed_right,
    format_word,
    identity,
    invert,
    parse_word,
    parse_words,
    s,
    S,
    v,
    width_profile,
    y,
    l,
)

EXAMPLE = "n=4: v3 y1 s2 S1 l3 v1"


def test_parse_example_word():
    w = parse_word(EXAMPLE)
    assert w.letters == (v(3), y(1), s(2), S(1), l(3), v(1))
    assert (w.top_width, w.bottom_width) == (4, 4)
    assert format_word(w) == EXAMPLE


def test_identity_round_trip():
    assert parse_word("n=3:") == identity(3)
    assert format_word(identity(4)) == "n=4:"


def test_format_longer_word():
    w = BraidWord(3, (l(3), S(3), v(2), S(1), v(1), y(2), v(2), v(1)))
    assert format_word(w) == "n=3: l3 S3 v2 S1 v1 y2 v2 v1"


def test_typing_error_reports_position():
    with pytest.raises(TypingError) as info:
        parse_word("n=2: y1 y1")
    assert "2" in str(info.value)


@pytest.mark.parametrize("text", ["n=2 s1", "n=0:", "n=2: x1", "n=2: s0", "s1", "n=2:s1"])
def test_syntax_errors(text):
    with pytest.raises((WordSyntaxError, TypingError)):
        parse_word(text)


def test_comments_and_blank_lines():
    words = parse_words("# header\nn=2: s1  # one crossing\n\nn=1:\n")
    assert [format_word(w) for w in words] == ["n=2: s1", "n=1:"]


def test_compose():
    w = parse_word(EXAMPLE)
    assert compose(identity(4), w) == w
    c = compose(parse_word("n=4: y1"), parse_word("n=3: l1"))
    assert format_word(c) == "n=4: y1 l1"
    assert width_profile(c) == [4, 3, 4]
    with pytest.raises(WidthMismatch):
        compose(parse_word("n=3: s1"), parse_word("n=4: v1"))


def test_width_profiles():
    assert width_profile(parse_word(EXAMPLE)) == [4, 4, 3, 3, 3, 4, 4]
    assert width_profile(identity(5)) == [5]
    assert width_profile(parse_word("n=3: l3")) == [3, 4]


def test_embeddings():
    assert embed_right(identity(2), 1) == identity(3)
    assert format_word(embed_left(parse_word("n=2: s1"))) == "n=3: s2"
    assert format_word(embed_left(parse_word(EXAMPLE))) == "n=5: v4 y2 s3 S2 l4 v2"


def test_invert():
    assert format_word(invert(parse_word("n=3: s1 v2"))) == "n=3: v2 S1"
    assert invert(identity(4)) == identity(4)
    with pytest.raises(NotInvertible):
        invert(parse_word("n=4: y1"))


@given(crossing_words())
def test_format_parse_round_trip(w):
    assert parse_word(format_word(w)) == w


@given(crossing_words())
def test_invert_is_involution(w):
    assert invert(invert(w)) == w


@given(square_words())
def test_generated_words_are_square(w):
    assert w.is_square
    assert parse_word(format_word(w)) == w
