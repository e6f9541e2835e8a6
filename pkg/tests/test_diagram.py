from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_diagram
from strategies import square_words

from vtb.diagram import (
    CAP,
    CROSSINGS,
    CUP_L,
    DOWN,
    UNZIP_V,
    UP,
    ZIP_V,
    Event,
    MorseDiagram,
    close,
    event_widths,
    fingerprint_diagram,
    format_diagram,
    is_regular,
    parse_diagram,
    up_arcs,
    validate,
    vertex_legs,
)
from vtb.errors import ArityError, NotSquare, OrientationError, WordSyntaxError
from vtb.fingerprint import fingerprint
from vtb.words import identity, parse_word

EXAMPLE = parse_word("n=4: v3 y1 s2 S1 l3 v1")


def test_unknot():
    d = parse_diagram("cupL 1 / cap 1")
    assert d.widths == [0, 2, 0]
    assert d.dirs[1] == (DOWN, UP)
    fp = fingerprint_diagram(d)
    assert fp.free_loops == 1 and fp.edges == ()
    arcs = up_arcs(d)
    assert len(arcs) == 1 and arcs[0].free


def test_two_circles_crossing_virtually():
    d = parse_diagram("cupL 1 / cupL 2 / xv 2 / xv 2 / cap 2 / cap 1")
    assert d.widths == [0, 2, 4, 4, 4, 2, 0]
    assert fingerprint_diagram(d).free_loops == 2


def test_text_format():
    text = "# a comment\ncupL 1\ncap 1  # closes\n"
    d = parse_diagram(text)
    assert format_diagram(d) == "cupL 1\ncap 1"
    assert parse_diagram(format_diagram(d)) == d
    for bad in ("cup 1", "cupL", "cupL 0", "cupL x", "cupL 1 2"):
        with pytest.raises(WordSyntaxError):
            parse_diagram(bad)


def test_arity_errors():
    with pytest.raises(ArityError):
        parse_diagram("cupL 1")
    with pytest.raises(ArityError):
        parse_diagram("cap 1")
    with pytest.raises(ArityError):
        event_widths([Event(CUP_L, 3)])


def test_orientation_errors():
    # a cap joining two downward strands
    with pytest.raises(OrientationError):
        parse_diagram("cupL 1 / cupR 2 / xp 2 / cap 1 / cap 1")
    # the Y vertex has all three legs pointing away from it
    with pytest.raises(OrientationError):
        parse_diagram("cupL 1 / cupR 3 / zip 2 / cupR 4 / xv 2 / cap 3 / zip 1 / cap 1")


def test_vertex_type_follows_orientation():
    # the Y is fed by both branches of one cup: one leg in, one out
    d = parse_diagram("cupL 1 / zip 1 / unzip 1 / cap 1")
    assert vertex_legs(d, 1)[:2] == (DOWN, UP)
    fp = fingerprint_diagram(d)
    assert (fp.zip_count, fp.unzip_count) == (1, 1)


def test_validate():
    validate(close(identity(1)))
    validate(MorseDiagram())
    assert MorseDiagram().widths == []


def test_close_identity():
    d = close(identity(1))
    assert d.events == (Event(CUP_L, 1), Event(CAP, 1))


def test_close_example_word():
    d = close(EXAMPLE)
    validate(d)
    assert d.count(ZIP_V) == 1 and d.count(UNZIP_V) == 1
    assert sum(d.count(k) for k in CROSSINGS) == 4
    assert fingerprint_diagram(d) == fingerprint(EXAMPLE)
    assert is_regular(d)


def test_close_rejects_non_square():
    with pytest.raises(NotSquare):
        close(parse_word("n=2: y1"))


def test_up_arc_through_virtual_crossing():
    d = parse_diagram("cupL 1 / cupL 3 / xv 2 / xv 2 / cap 3 / cap 1")
    crossing = [a for a in up_arcs(d) if a.crossings]
    assert crossing and set(crossing[0].crossings) == {2, 3}


@settings(max_examples=100, deadline=None)
@given(square_words(max_width=4, max_len=10))
def test_closure_fingerprint_matches_word(w):
    d = close(w)
    assert fingerprint_diagram(d) == fingerprint(w)
    arcs = up_arcs(d)
    assert len(arcs) == w.top_width and all(a.free for a in arcs)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_diagrams_round_trip(seed):
    d = random_diagram(random.Random(seed), 8, 5)
    again = parse_diagram(format_diagram(d))
    assert again == d and again.dirs == d.dirs
    validate(d)
