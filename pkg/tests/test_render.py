"""Renderer output: determinism, glyph counts and the ASCII glyph table."""

from __future__ import annotations

import random

import pytest

from strategies import random_square_word
from vtb.diagram import close, parse_diagram
from vtb.render import ASCII_GLYPHS, render, render_ascii, render_svg
from vtb.words import BraidWord, parse_word

EXAMPLE = "n=4: v3 y1 s2 S1 l3 v1"


def test_identity_ascii_is_two_bars():
    assert render(BraidWord(2), "ascii") == "|   |\n|   |\n"


def test_single_virtual_crossing_has_one_circle():
    svg = render(parse_word("n=2: v1"), "svg")
    assert svg.count("<circle") == 1
    assert svg.count('class="virtual"') == 1
    assert 'cx="40" cy="40"' in svg


def test_closure_of_example_word_glyph_counts():
    svg = render_svg(close(parse_word(EXAMPLE)))
    assert svg.count('class="vertex"') == 2
    # the closure adds no crossings, so every crossing glyph is a letter
    assert svg.count('class="crossing') == 4
    assert svg.count('class="virtual"') == 2
    assert svg.count('class="cap"') == 4


def test_classical_crossings_break_the_under_strand():
    pos = render_svg(parse_word("n=2: s1"))
    neg = render_svg(parse_word("n=2: S1"))
    assert pos != neg
    assert "<circle" not in pos
    # one solid over-strand plus two pieces of the under-strand
    assert pos.count("<line") == neg.count("<line") == 3


def test_svg_is_well_formed_xml():
    import xml.etree.ElementTree as ET

    root = ET.fromstring(render_svg(parse_diagram("cupL 1 / unzip 1 / xv 1 / zip 1 / cap 1")))
    assert root.tag.endswith("svg")


def test_ascii_uses_glyph_table_and_orientation():
    text = render_ascii(parse_diagram("cupL 1 / cupL 2 / xp 2 / cap 1 / cap 1"))
    assert ASCII_GLYPHS["cupL"] in text
    assert ASCII_GLYPHS["xp"] in text
    assert "^" in text  # diagrams show upward strands


def test_unknown_format_is_rejected():
    with pytest.raises(ValueError):
        render(BraidWord(1), "png")


@pytest.mark.parametrize("seed", range(20))
def test_rendering_is_deterministic(seed):
    w = random_square_word(random.Random(seed))
    for fmt in ("svg", "ascii"):
        assert render(w, fmt) == render(parse_word(str(w)), fmt)
        assert render(close(w), fmt) == render(close(w), fmt)
