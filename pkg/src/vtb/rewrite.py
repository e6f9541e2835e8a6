"""Braid isotopy as a rewriting system.

Every relation family is stored as a :class:`RewriteRule` whose instances are
enumerated per ambient width.  Instances are plain pairs of letter tuples, so
applying a rule anywhere in a word is a slice comparison.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import VTBError
from .words import (
    CROSSING_KINDS,
    KINDS,
    SIGMA_NEG,
    SIGMA_POS,
    UNZIP,
    VIRT,
    ZIP,
    BraidWord,
    Generator,
    S,
    check_typing,
    l,
    s,
    v,
    width_profile,
    y,
)

Letters = tuple[Generator, ...]


@dataclass(frozen=True)
class RewriteRule:
    """A parameterised relation ``lhs(params) = rhs(params)``.

    ``make`` maps a parameter tuple to ``(lhs, rhs)``; ``params`` yields the
    candidate parameter tuples for a given ambient width.  Candidates that are
    not width-legal on both sides are dropped when instances are built.
    ``oriented`` marks rules that free reduction applies left to right.
    """

    name: str
    make: Callable[..., tuple[Letters, Letters]]
    params: Callable[[int], Iterator[tuple]]
    oriented: bool = False
    description: str = ""

    def instances(self, width: int) -> list[tuple[Letters, Letters]]:
        return _instances(self, width)


@functools.lru_cache(maxsize=None)
def _instances(rule: RewriteRule, width: int) -> list[tuple[Letters, Letters]]:
    out = []
    seen = set()
    for p in rule.params(width):
        lhs, rhs = rule.make(*p)
        if (lhs, rhs) in seen:
            continue
        try:
            if check_typing(width, lhs) != check_typing(width, rhs):
                continue
        except VTBError:
            continue
        seen.add((lhs, rhs))
        out.append((lhs, rhs))
    return out


def _single(width: int) -> Iterator[tuple]:
    for i in range(1, width + 1):
        yield (i,)


def _far_pairs(width: int) -> Iterator[tuple]:
    # commuting families: i + 1 < j, any far letter kind
    for i in range(1, width + 2):
        for j in range(i + 2, width + 3):
            for kind in KINDS:
                yield i, j, kind


def _far_crossing_pairs(width: int) -> Iterator[tuple]:
    for i, j, kind in _far_pairs(width):
        for near in (SIGMA_POS, SIGMA_NEG, VIRT):
            yield near, i, j, kind


def _b(kind: str, j: int) -> Generator:
    return Generator(kind, j)


RULES: tuple[RewriteRule, ...] = (
    RewriteRule("R2", lambda i: ((s(i), S(i)), ()), _single, True, "s_i S_i = 1"),
    RewriteRule("R2'", lambda i: ((S(i), s(i)), ()), _single, True, "S_i s_i = 1"),
    RewriteRule("V2", lambda i: ((v(i), v(i)), ()), _single, True, "v_i v_i = 1"),
    RewriteRule(
        "R3", lambda i: ((s(i), s(i + 1), s(i)), (s(i + 1), s(i), s(i + 1))), _single,
        description="s_i s_i+1 s_i = s_i+1 s_i s_i+1",
    ),
    RewriteRule(
        "V3", lambda i: ((v(i), v(i + 1), v(i)), (v(i + 1), v(i), v(i + 1))), _single,
        description="v_i v_i+1 v_i = v_i+1 v_i v_i+1",
    ),
    RewriteRule(
        "VR3", lambda i: ((v(i), s(i + 1), v(i)), (v(i + 1), s(i), v(i + 1))), _single,
        description="v_i s_i+1 v_i = v_i+1 s_i v_i+1",
    ),
    RewriteRule(
        "R4a", lambda i: ((s(i + 1), s(i), y(i + 1)), (y(i), s(i))), _single,
        description="s_i+1 s_i y_i+1 = y_i s_i",
    ),
    RewriteRule(
        "R4b", lambda i: ((s(i), s(i + 1), y(i)), (y(i + 1), s(i))), _single,
        description="s_i s_i+1 y_i = y_i+1 s_i",
    ),
    RewriteRule(
        "R4c", lambda i: ((s(i), l(i + 1)), (l(i), s(i + 1), s(i))), _single,
        description="s_i l_i+1 = l_i s_i+1 s_i",
    ),
    RewriteRule(
        "R4d", lambda i: ((s(i), l(i)), (l(i + 1), s(i), s(i + 1))), _single,
        description="s_i l_i = l_i+1 s_i s_i+1",
    ),
    RewriteRule(
        "V4a", lambda i: ((v(i + 1), v(i), y(i + 1)), (y(i), v(i))), _single,
        description="v_i+1 v_i y_i+1 = y_i v_i",
    ),
    RewriteRule(
        "V4b", lambda i: ((l(i), v(i + 1), v(i)), (v(i), l(i + 1))), _single,
        description="l_i v_i+1 v_i = v_i l_i+1",
    ),
    RewriteRule("R5a", lambda i: ((s(i), y(i)), (y(i),)), _single, True, "s_i y_i = y_i"),
    RewriteRule("R5b", lambda i: ((l(i), s(i)), (l(i),)), _single, True, "l_i s_i = l_i"),
    # the inverse-crossing forms follow from R5a/R5b and R2 but are listed so
    # that both twists are one step away
    RewriteRule("R5c", lambda i: ((S(i), y(i)), (y(i),)), _single, True, "S_i y_i = y_i"),
    RewriteRule("R5d", lambda i: ((l(i), S(i)), (l(i),)), _single, True, "l_i S_i = l_i"),
    RewriteRule(
        "C1", lambda near, i, j, kind: ((Generator(near, i), _b(kind, j)), (_b(kind, j), Generator(near, i))),
        _far_crossing_pairs, description="x_i b_j = b_j x_i for x in {s, S, v}, i+1 < j",
    ),
    RewriteRule(
        "C2", lambda i, j, kind: ((y(i), _b(kind, j - 1)), (_b(kind, j), y(i))),
        _far_pairs, description="y_i b_j-1 = b_j y_i, i+1 < j",
    ),
    RewriteRule(
        "C3", lambda i, j, kind: ((l(i), _b(kind, j)), (_b(kind, j - 1), l(i))),
        _far_pairs, description="l_i b_j = b_j-1 l_i, i+1 < j",
    ),
)

RULES_BY_NAME = {r.name: r for r in RULES}


def relations_table() -> list[RewriteRule]:
    return list(RULES)


def lookup(name: str) -> RewriteRule:
    return RULES_BY_NAME[name]


# Forbidden moves: look like relations, are NOT isotopies.  Never offered by
# any operation; kept for negative tests only.
FORBIDDEN: tuple[RewriteRule, ...] = (
    RewriteRule(
        "F1", lambda i: ((v(i), s(i + 1), s(i)), (s(i + 1), s(i), v(i + 1))), _single,
        description="over-strand passes a virtual crossing",
    ),
    RewriteRule(
        "F2", lambda i: ((s(i), s(i + 1), v(i)), (v(i + 1), s(i), s(i + 1))), _single,
        description="under-strand passes a virtual crossing",
    ),
    RewriteRule(
        "F3", lambda i: ((v(i), y(i)), (y(i),)), _single,
        description="virtual twist absorbed into a vertex",
    ),
)


# --- rule application ------------------------------------------------------

@dataclass(frozen=True)
class RuleSite:
    """One rule instance applied at a letter position (0-based)."""

    rule: str
    position: int
    lhs: Letters
    rhs: Letters

    def __str__(self) -> str:
        lhs = " ".join(map(str, self.lhs)) or "1"
        rhs = " ".join(map(str, self.rhs)) or "1"
        return f"{self.rule}@{self.position}:{lhs}->{rhs}"


@functools.lru_cache(maxsize=None)
def _index(width: int, rules: tuple[RewriteRule, ...]) -> tuple[dict, list]:
    """Instances at ``width`` keyed by first letter, both directions."""
    by_first: dict[Generator, list[tuple[str, Letters, Letters]]] = {}
    empty: list[tuple[str, Letters, Letters]] = []
    for rule in rules:
        for lhs, rhs in rule.instances(width):
            for a, b in ((lhs, rhs), (rhs, lhs)):
                if a:
                    by_first.setdefault(a[0], []).append((rule.name, a, b))
                else:
                    empty.append((rule.name, a, b))
    return by_first, empty


def rule_sites(w: BraidWord, rules: tuple[RewriteRule, ...] = RULES) -> Iterator[RuleSite]:
    """Every applicable rule instance, either direction, scanned left to right."""
    widths = width_profile(w)
    letters = w.letters
    for pos in range(len(letters) + 1):
        by_first, empty = _index(widths[pos], rules)
        for name, a, b in empty:
            yield RuleSite(name, pos, a, b)
        if pos == len(letters):
            break
        for name, a, b in by_first.get(letters[pos], ()):
            if letters[pos:pos + len(a)] == a:
                yield RuleSite(name, pos, a, b)


def apply_site(w: BraidWord, site: RuleSite) -> BraidWord:
    letters = w.letters
    p = site.position
    if letters[p:p + len(site.lhs)] != site.lhs:
        raise VTBError(f"{site} does not match")
    return BraidWord(w.top_width, letters[:p] + site.rhs + letters[p + len(site.lhs):])


def isotopy_neighbors(w: BraidWord, max_len: int) -> set[BraidWord]:
    return {u for _, u in isotopy_moves(w, max_len)}


def isotopy_moves(w: BraidWord, max_len: int) -> Iterator[tuple[RuleSite, BraidWord]]:
    for site in rule_sites(w):
        if len(w) - len(site.lhs) + len(site.rhs) > max_len:
            continue
        yield site, apply_site(w, site)


# --- reduction and normal form ---------------------------------------------

def _reduces(a: Generator, b: Generator) -> Letters | None:
    """Length-decreasing replacement for the adjacent pair ``a b``, if any."""
    if a.index != b.index:
        return None
    ka, kb = a.kind, b.kind
    if (ka, kb) in ((SIGMA_POS, SIGMA_NEG), (SIGMA_NEG, SIGMA_POS), (VIRT, VIRT)):
        return ()
    if kb == ZIP and ka in (SIGMA_POS, SIGMA_NEG):
        return (b,)
    if ka == UNZIP and kb in (SIGMA_POS, SIGMA_NEG):
        return (a,)
    return None


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel inverse pairs and absorb crossings into adjacent vertices."""
    stack: list[Generator] = []
    for g in w.letters:
        _push_reduced(stack, g)
    return BraidWord(w.top_width, tuple(stack))


def _push_reduced(stack: list[Generator], g: Generator) -> None:
    while stack:
        rep = _reduces(stack[-1], g)
        if rep is None:
            break
        if rep == ():
            stack.pop()
            return
        if rep[0] == g:  # crossing absorbed into the incoming zip
            stack.pop()
            continue
        return  # crossing absorbed into the unzip on the stack
    stack.append(g)


@functools.lru_cache(maxsize=None)
def commute(a: Generator, b: Generator) -> tuple[Generator, Generator] | None:
    """Rewrite ``a b`` to ``b' a'`` by one commuting relation, if one applies."""
    i, j = a.index, b.index
    if a.kind in CROSSING_KINDS and i + 1 < j:
        return b, a
    if b.kind in CROSSING_KINDS and j + 1 < i:
        return b, a
    if a.kind == ZIP and j > i:
        return Generator(b.kind, j + 1), a
    if b.kind == ZIP and j + 1 < i:
        return b, Generator(a.kind, i - 1)
    if a.kind == UNZIP and j > i + 1:
        return Generator(b.kind, j - 1), a
    if b.kind == UNZIP and i > j:
        return b, Generator(a.kind, i + 1)
    return None


def _reduce_mod_commutation(letters: Letters) -> list[Generator]:
    """Free reduction where a new letter may first slide left past commuting letters."""
    out: list[Generator] = []
    for g in letters:
        _insert(out, g)
    return out


def _insert(out: list[Generator], g: Generator) -> None:
    x = g
    k = len(out)
    passed: list[Generator] = []
    hit = None
    while k > 0:
        hit = _reduces(out[k - 1], x)
        if hit is not None:
            break
        sw = commute(out[k - 1], x)
        if sw is None:
            break
        x, moved = sw
        passed.append(moved)
        k -= 1
    if hit is None:
        out.append(g)
        return
    # sequence is now out[:k] + [x] + reversed(passed), with out[k-1] x reducible
    tail = list(reversed(passed))
    left = out[k - 1]
    if hit and hit[0] == left:
        return  # unzip swallows the crossing; passed letters are unchanged
    del out[k - 1:]
    for r in list(hit) + tail:
        _insert(out, r)


_SORT_KEY = functools.lru_cache(maxsize=None)(lambda g: g.sort_key)


def _lex_min(letters: list[Generator]) -> list[Generator]:
    """Lexicographically least arrangement reachable by commuting relations.

    Greedy: at each step bring the least letter that can slide to the front.
    """
    rest = list(letters)
    result: list[Generator] = []
    while rest:
        best_key = best_k = None
        for k in range(len(rest)):
            x = rest[k]
            for m in range(k - 1, -1, -1):
                sw = commute(rest[m], x)
                if sw is None:
                    break
                x = sw[0]
            else:
                key = _SORT_KEY(x)
                if best_key is None or key < best_key:
                    best_key, best_k = key, k
        k = best_k
        x = rest[k]
        moved: list[Generator] = []
        for m in range(k - 1, -1, -1):
            x, a2 = commute(rest[m], x)
            moved.append(a2)
        result.append(x)
        moved.reverse()
        rest = moved + rest[k + 1:]
    return result


@functools.lru_cache(maxsize=1 << 18)
def canonical_form(w: BraidWord) -> BraidWord:
    """Free-reduced, commutation-sorted representative."""
    letters = list(w.letters)
    while True:
        reduced = _reduce_mod_commutation(tuple(letters))
        ordered = _lex_min(reduced)
        if ordered == letters:
            return BraidWord(w.top_width, tuple(ordered))
        letters = ordered
