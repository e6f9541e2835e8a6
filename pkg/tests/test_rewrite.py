from __future__ import annotations

from hypothesis import given, settings
from strategies import square_words

from vtb.fingerprint import fingerprint
from vtb.rewrite import (
    FORBIDDEN,
    RULES_BY_NAME,
    apply_site,
    canonical_form,
    free_reduce,
    isotopy_neighbors,
    lookup,
    relations_table,
    rule_sites,
)
from vtb.selftest import relation_sweep
from vtb.words import BraidWord, format_word, identity, parse_word, s, S, v, y


def P(text: str) -> BraidWord:
    return parse_word(text)


def test_table_lookups():
    assert (s(1), S(1)) in [lhs for lhs, _ in lookup("R2").instances(2)]
    assert ((v(2), v(1), y(2)), (y(1), v(1))) in lookup("V4a").instances(3)
    assert ((y(1), s(2)), (s(3), y(1))) in lookup("C2").instances(4)


def test_every_family_has_instances_and_a_name():
    names = [r.name for r in relations_table()]
    assert len(names) == len(set(names))
    for rule in relations_table():
        assert any(rule.instances(n) for n in range(2, 7)), rule.name


def test_forbidden_rules_are_not_relations():
    assert {r.name for r in FORBIDDEN} == {"F1", "F2", "F3"}
    assert not {r.name for r in FORBIDDEN} & set(RULES_BY_NAME)


def test_relation_sweep_is_sound():
    count, bad = relation_sweep()
    assert count > 0
    assert bad == []


def test_free_reduce_examples():
    assert free_reduce(P("n=2: s1 S1")) == identity(2)
    assert format_word(free_reduce(P("n=2: s1 y1"))) == "n=2: y1"
    assert free_reduce(P("n=3: v1 s2 S2 v1")) == identity(3)
    assert format_word(free_reduce(P("n=2: l2 s2"))) == "n=2: l2"


def test_canonical_form_examples():
    assert format_word(canonical_form(P("n=5: s3 s1"))) == "n=5: s1 s3"
    assert format_word(canonical_form(P("n=5: s1 s3"))) == "n=5: s1 s3"
    assert canonical_form(P("n=5: y1 s2")) == canonical_form(P("n=5: s3 y1"))


def test_isotopy_neighbor_examples():
    near = isotopy_neighbors(identity(2), 2)
    assert {P("n=2: s1 S1"), P("n=2: S1 s1"), P("n=2: v1 v1")} <= near
    assert P("n=3: y1 v1") in isotopy_neighbors(P("n=3: v2 v1 y2"), 4)
    assert {P("n=2: s1 y1"), P("n=2: S1 y1")} <= isotopy_neighbors(P("n=2: y1"), 3)


def test_isotopy_neighbors_respect_max_len():
    assert all(len(u) <= 3 for u in isotopy_neighbors(P("n=3: s1 s2 s1"), 3))


@settings(max_examples=60, deadline=None)
@given(square_words(max_width=4, max_len=8))
def test_every_rule_site_preserves_fingerprint(w):
    fp = fingerprint(w)
    for site in rule_sites(w):
        assert fingerprint(apply_site(w, site)) == fp, str(site)


@settings(max_examples=100, deadline=None)
@given(square_words(max_width=5, max_len=10))
def test_reductions_preserve_fingerprint(w):
    assert fingerprint(free_reduce(w)) == fingerprint(w)
    assert fingerprint(canonical_form(w)) == fingerprint(w)


@settings(max_examples=100, deadline=None)
@given(square_words(max_width=5, max_len=10))
def test_canonical_form_is_idempotent_and_no_longer(w):
    c = canonical_form(w)
    assert canonical_form(c) == c
    assert len(c) <= len(free_reduce(w)) <= len(w)


@settings(max_examples=60, deadline=None)
@given(square_words(max_width=5, max_len=8))
def test_commuting_relations_keep_canonical_form(w):
    c = canonical_form(w)
    for site in rule_sites(w, tuple(RULES_BY_NAME[n] for n in ("C1", "C2", "C3"))):
        assert canonical_form(apply_site(w, site)) == c, str(site)
