"""Algebraic Markov moves on square words.

All moves take and return square words.  Positions are 0-based: a *boundary*
``p`` sits between letters ``p-1`` and ``p`` (``0`` is the top, ``len(w)`` the
bottom); a *site* is the index of the first letter of a pattern.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    BadSite,
    IllegalConjugator,
    IllegalMoveAt,
    NotSquare,
    PatternNotFound,
    VTBError,
    WidthTooSmall,
)
from .rewrite import RULES_BY_NAME, RuleSite, apply_site, canonical_form, rule_sites
from .words import (
    CROSSING_KINDS,
    SIGMA_NEG,
    SIGMA_POS,
    UNZIP,
    VIRT,
    BraidWord,
    Generator,
    S,
    embed_left,
    parse_word,
    s,
    v,
    width_profile,
)

CONJUGATE_SIGMA = "ConjugateSigma"
CONJUGATE_VIRT = "ConjugateVirt"
STAB = {SIGMA_POS: "StabSigmaPos", SIGMA_NEG: "StabSigmaNeg", VIRT: "StabVirt"}
DESTAB = {SIGMA_POS: "DestabSigmaPos", SIGMA_NEG: "DestabSigmaNeg", VIRT: "DestabVirt"}
THREAD_RIGHT = "ThreadRight"
UNTHREAD_RIGHT = "UnthreadRight"
THREAD_LEFT = "ThreadLeft"
UNTHREAD_LEFT = "UnthreadLeft"
TRIVALENT_FLIP = "TrivalentFlip"
ISOTOPY = "Isotopy"
# replace the current word by another word with the same canonical form
ISOTOPY_TO = "IsotopyTo"

MOVE_KINDS = (
    CONJUGATE_SIGMA, CONJUGATE_VIRT, *STAB.values(), *DESTAB.values(),
    THREAD_RIGHT, UNTHREAD_RIGHT, THREAD_LEFT, UNTHREAD_LEFT, TRIVALENT_FLIP,
    ISOTOPY, ISOTOPY_TO,
)
_STAB_KIND = {name: kind for kind, name in STAB.items()}
_DESTAB_KIND = {name: kind for kind, name in DESTAB.items()}


@dataclass(frozen=True)
class Move:
    kind: str
    site: int | None = None
    letter: Generator | None = None
    rule: RuleSite | None = None
    target: BraidWord | None = None

    def __str__(self) -> str:
        if self.kind in (CONJUGATE_SIGMA, CONJUGATE_VIRT):
            return f"{self.kind} {self.letter}"
        if self.kind == ISOTOPY:
            return f"{self.kind} {self.rule}"
        if self.kind == ISOTOPY_TO:
            return f"{self.kind} {self.target}"
        return f"{self.kind} @{self.site}"


_RULE_TEXT = re.compile(r"(\S+)@(\d+):(.*)->(.*)")


def _letters(text: str) -> tuple[Generator, ...]:
    text = text.strip()
    if text == "1":
        return ()
    return tuple(Generator(tok[0], int(tok[1:])) for tok in text.split())


def parse_move(text: str) -> Move:
    """Inverse of ``str(move)``."""
    text = text.strip()
    kind, _, rest = text.partition(" ")
    rest = rest.strip()
    try:
        if kind in (CONJUGATE_SIGMA, CONJUGATE_VIRT):
            return Move(kind, letter=Generator(rest[0], int(rest[1:])))
        if kind == ISOTOPY:
            m = _RULE_TEXT.fullmatch(rest)
            if m is None:
                raise ValueError(rest)
            return Move(kind, rule=RuleSite(m.group(1), int(m.group(2)), _letters(m.group(3)), _letters(m.group(4))))
        if kind == ISOTOPY_TO:
            return Move(kind, target=parse_word(rest))
        if kind in MOVE_KINDS and rest.startswith("@"):
            return Move(kind, site=int(rest[1:]))
    except (ValueError, IndexError) as exc:
        raise VTBError(f"bad move {text!r}") from exc
    raise VTBError(f"bad move {text!r}")


def _require_square(w: BraidWord) -> int:
    if not w.is_square:
        raise NotSquare(f"word has widths {w.top_width} -> {w.bottom_width}")
    return w.top_width


def _full_width_boundary(w: BraidWord, pos: int) -> int:
    n = _require_square(w)
    widths = width_profile(w)
    if not 0 <= pos <= len(w) or widths[pos] != n:
        raise BadSite(f"running width at boundary {pos} is not {n}")
    return n


# --- (i) conjugation -------------------------------------------------------

def conjugate(w: BraidWord, g: Generator) -> BraidWord:
    """``g w g^-1`` for a crossing letter ``g``."""
    n = _require_square(w)
    if g.kind not in CROSSING_KINDS or not 1 <= g.index <= n - 1:
        raise IllegalConjugator(f"cannot conjugate by {g} at width {n}")
    return BraidWord(n, (g,) + w.letters + (g.inverse(),))


# --- (ii) stabilisation ----------------------------------------------------

def stabilize(w: BraidWord, pos: int, letter_kind: str) -> BraidWord:
    if letter_kind not in CROSSING_KINDS:
        raise ValueError(f"stabilisation letter must be a crossing, got {letter_kind!r}")
    n = _full_width_boundary(w, pos)
    return BraidWord(n + 1, w.letters[:pos] + (Generator(letter_kind, n),) + w.letters[pos:])


def _off_right_strand(w: BraidWord, skip: range) -> bool:
    """True when no letter outside ``skip`` touches the rightmost top strand."""
    widths = width_profile(w)
    return all(
        g.legal_at(widths[k] - 1) for k, g in enumerate(w.letters) if k not in skip
    )


def can_destabilize(w: BraidWord, site: int) -> bool:
    if not w.is_square or w.top_width < 2 or not 0 <= site < len(w):
        return False
    n1 = w.top_width
    g = w.letters[site]
    if g.kind not in CROSSING_KINDS or g.index != n1 - 1:
        return False
    if width_profile(w)[site] != n1:
        return False
    return _off_right_strand(w, range(site, site + 1))


def destabilize_at(w: BraidWord, site: int) -> BraidWord:
    if not can_destabilize(w, site):
        raise BadSite(f"no removable stabilisation letter at {site}")
    return BraidWord(w.top_width - 1, w.letters[:site] + w.letters[site + 1:])


def destabilize(w: BraidWord) -> list[tuple[Move, BraidWord]]:
    out = []
    for site, g in enumerate(w.letters):
        if can_destabilize(w, site):
            out.append((Move(DESTAB[g.kind], site=site), destabilize_at(w, site)))
    return out


# --- (iii) under-threading -------------------------------------------------

def thread_right(w: BraidWord, pos: int) -> BraidWord:
    n = _full_width_boundary(w, pos)
    if n < 2:
        raise WidthTooSmall("right threading needs at least two strands")
    block = (S(n), v(n - 1), s(n))
    return BraidWord(n + 1, w.letters[:pos] + block + w.letters[pos:])


def thread_left(w: BraidWord, pos: int) -> BraidWord:
    n = _full_width_boundary(w, pos)
    if n < 2:
        raise WidthTooSmall("left threading needs at least two strands")
    shifted = embed_left(w).letters
    return BraidWord(n + 1, shifted[:pos] + (s(1), v(2), S(1)) + shifted[pos:])


def can_unthread_right(w: BraidWord, site: int) -> bool:
    n1 = w.top_width
    if not w.is_square or n1 < 3:
        return False
    if w.letters[site:site + 3] != (S(n1 - 1), v(n1 - 2), s(n1 - 1)):
        return False
    if width_profile(w)[site] != n1:
        return False
    return _off_right_strand(w, range(site, site + 3))


def unthread_right(w: BraidWord, site: int) -> BraidWord:
    if not can_unthread_right(w, site):
        raise BadSite(f"no right threading block at {site}")
    return BraidWord(w.top_width - 1, w.letters[:site] + w.letters[site + 3:])


def can_unthread_left(w: BraidWord, site: int) -> bool:
    n1 = w.top_width
    if not w.is_square or n1 < 3:
        return False
    if w.letters[site:site + 3] != (s(1), v(2), S(1)):
        return False
    if width_profile(w)[site] != n1:
        return False
    return all(g.index >= 2 for k, g in enumerate(w.letters) if not site <= k < site + 3)


def unthread_left(w: BraidWord, site: int) -> BraidWord:
    if not can_unthread_left(w, site):
        raise BadSite(f"no left threading block at {site}")
    rest = w.letters[:site] + w.letters[site + 3:]
    return BraidWord(w.top_width - 1, tuple(g.shifted(-1) for g in rest))


# --- (iv) trivalent relation -----------------------------------------------

def _flip_pattern(w: BraidWord, site: int) -> bool:
    block = w.letters[site:site + 3]
    if site < 0 or len(block) != 3:
        return False
    lam, virt, cross = block
    n = lam.index
    return (
        lam.kind == UNZIP
        and n >= 2
        and width_profile(w)[site] == n
        and virt == v(n - 1)
        and cross.kind in (SIGMA_POS, SIGMA_NEG)
        and cross.index == n
    )


def trivalent_flip(w: BraidWord, site: int) -> BraidWord:
    """``l_n v_n-1 s_n^e -> l_n v_n-1 s_n^-e`` where the unzip splits the rightmost strand."""
    if not _flip_pattern(w, site):
        raise PatternNotFound(f"no l_n v_n-1 s_n pattern at {site}")
    letters = list(w.letters)
    letters[site + 2] = letters[site + 2].inverse()
    return BraidWord(w.top_width, tuple(letters))


def left_trivalent_flip(w: BraidWord, site: int) -> BraidWord:
    """Mirror image of :func:`trivalent_flip`: ``l_1 v_2 s_1^e`` flips its sign.

    Not part of the search move set; it is derivable from the right version.
    """
    block = w.letters[site:site + 3]
    if len(block) != 3 or block[0] != Generator(UNZIP, 1) or block[1] != v(2) or block[2] not in (s(1), S(1)):
        raise PatternNotFound(f"no l_1 v_2 s_1 pattern at {site}")
    letters = list(w.letters)
    letters[site + 2] = letters[site + 2].inverse()
    return BraidWord(w.top_width, tuple(letters))


# --- geometric L_v-moves as composites ---------------------------------------

BASIC = "Basic"
REAL_POS = "RealPos"
REAL_NEG = "RealNeg"
VIRTUAL = "Virtual"
_LV_LETTER = {BASIC: VIRT, REAL_POS: SIGMA_POS, REAL_NEG: SIGMA_NEG, VIRTUAL: VIRT}


def geometric_lv_right(w: BraidWord, pos: int, flavor: str, strand: int | None = None) -> BraidWord:
    """Right L_v-move cutting ``strand`` (default: the rightmost) at boundary ``pos``.

    The cut strand is carried to the right edge through virtual crossings,
    meets the new strand in one crossing of the requested flavour, and the new
    strand is carried back: ``a V X_n V^-1 b`` with ``V = v_k ... v_n-1``.
    This is a stabilisation conjugated by ``V``.
    """
    if flavor not in _LV_LETTER:
        raise ValueError(f"unknown L_v flavour {flavor!r}")
    n = _full_width_boundary(w, pos)
    k = n if strand is None else strand
    if not 1 <= k <= n:
        raise BadSite(f"strand {k} out of range 1..{n}")
    there = tuple(v(i) for i in range(k, n))
    block = there + (Generator(_LV_LETTER[flavor], n),) + tuple(reversed(there))
    return BraidWord(n + 1, w.letters[:pos] + block + w.letters[pos:])


# --- applying named moves ------------------------------------------------------

def apply_move(w: BraidWord, move: Move) -> BraidWord:
    kind = move.kind
    if kind in (CONJUGATE_SIGMA, CONJUGATE_VIRT):
        g = move.letter
        if g is None or (kind == CONJUGATE_VIRT) != (g.kind == VIRT):
            raise IllegalConjugator(f"{kind} needs a matching letter")
        return conjugate(w, g)
    if kind in _STAB_KIND:
        return stabilize(w, _site(move), _STAB_KIND[kind])
    if kind in _DESTAB_KIND:
        site = _site(move)
        if not can_destabilize(w, site) or w.letters[site].kind != _DESTAB_KIND[kind]:
            raise BadSite(f"{kind} not applicable at {site}")
        return destabilize_at(w, site)
    if kind == THREAD_RIGHT:
        return thread_right(w, _site(move))
    if kind == THREAD_LEFT:
        return thread_left(w, _site(move))
    if kind == UNTHREAD_RIGHT:
        return unthread_right(w, _site(move))
    if kind == UNTHREAD_LEFT:
        return unthread_left(w, _site(move))
    if kind == TRIVALENT_FLIP:
        return trivalent_flip(w, _site(move))
    if kind == ISOTOPY:
        site = move.rule
        if site is None or site.rule not in RULES_BY_NAME:
            raise VTBError("isotopy move without a known rule")
        rule = RULES_BY_NAME[site.rule]
        widths = width_profile(w)
        if site.position > len(w):
            raise BadSite(f"position {site.position} past the end")
        pairs = rule.instances(widths[site.position])
        if (site.lhs, site.rhs) not in pairs and (site.rhs, site.lhs) not in pairs:
            raise BadSite(f"{site} is not an instance of {site.rule}")
        return apply_site(w, site)
    if kind == ISOTOPY_TO:
        target = move.target
        if target is None or canonical_form(target) != canonical_form(w):
            raise VTBError("target is not braid isotopic by canonical form")
        return target
    raise VTBError(f"unknown move kind {kind!r}")


def _site(move: Move) -> int:
    if move.site is None:
        raise BadSite(f"{move.kind} needs a site")
    return move.site


def inverse_move(move: Move, before: BraidWord) -> Move:
    """A move taking ``apply_move(before, move)`` back to a word isotopic to ``before``.

    Exact for every kind except conjugation, where the result differs from
    ``before`` by free reduction.
    """
    kind = move.kind
    if kind in (CONJUGATE_SIGMA, CONJUGATE_VIRT):
        return Move(kind, letter=move.letter.inverse())
    if kind in _STAB_KIND:
        return Move(DESTAB[_STAB_KIND[kind]], site=move.site)
    if kind in _DESTAB_KIND:
        return Move(STAB[_DESTAB_KIND[kind]], site=move.site)
    if kind == THREAD_RIGHT:
        return Move(UNTHREAD_RIGHT, site=move.site)
    if kind == UNTHREAD_RIGHT:
        return Move(THREAD_RIGHT, site=move.site)
    if kind == THREAD_LEFT:
        return Move(UNTHREAD_LEFT, site=move.site)
    if kind == UNTHREAD_LEFT:
        return Move(THREAD_LEFT, site=move.site)
    if kind == TRIVALENT_FLIP:
        return move
    if kind == ISOTOPY:
        r = move.rule
        return Move(ISOTOPY, rule=RuleSite(r.rule, r.position, r.rhs, r.lhs))
    if kind == ISOTOPY_TO:
        return Move(ISOTOPY_TO, target=before)
    raise VTBError(f"unknown move kind {kind!r}")


def replay(w: BraidWord, path: Iterable[Move]) -> BraidWord:
    """Apply moves in order; raises IllegalMoveAt(step) (1-based) on failure."""
    cur = w
    for step, move in enumerate(path, start=1):
        try:
            cur = apply_move(cur, move)
        except VTBError as exc:
            raise IllegalMoveAt(step, str(exc)) from exc
    return cur


# --- neighbourhood -------------------------------------------------------------

@dataclass(frozen=True)
class Limits:
    max_len: int = 16
    max_width: int = 6


def markov_neighbors(w: BraidWord, limits: Limits) -> list[tuple[Move, BraidWord]]:
    """Every single algebraic move (plus every single isotopy rule instance)."""
    return list(iter_markov_neighbors(w, limits))


# Rules whose every application is undone by canonical_form: commutations,
# insertions/deletions of inverse pairs and crossings absorbed at a vertex.
NORMALIZED_RULES = frozenset({"R2", "R2'", "V2", "R5a", "R5b", "R5c", "R5d", "C1", "C2", "C3"})


def iter_markov_neighbors(
    w: BraidWord, limits: Limits, skip_rules: frozenset[str] = frozenset()
) -> Iterator[tuple[Move, BraidWord]]:
    """Lazy :func:`markov_neighbors`.

    ``skip_rules`` drops isotopy rules by name; the search passes
    ``NORMALIZED_RULES`` because its states are already canonical.
    """
    n = _require_square(w)
    length = len(w)
    for site in rule_sites(w):
        if site.rule in skip_rules or length - len(site.lhs) + len(site.rhs) > limits.max_len:
            continue
        yield Move(ISOTOPY, rule=site), apply_site(w, site)
    if length + 2 <= limits.max_len:
        for i in range(1, n):
            for g in (s(i), S(i)):
                yield Move(CONJUGATE_SIGMA, letter=g), conjugate(w, g)
            yield Move(CONJUGATE_VIRT, letter=v(i)), conjugate(w, v(i))
    widths = width_profile(w)
    full = [p for p, wd in enumerate(widths) if wd == n]
    if n + 1 <= limits.max_width:
        if length + 1 <= limits.max_len:
            for p in full:
                for kind, name in STAB.items():
                    yield Move(name, site=p), stabilize(w, p, kind)
        if n >= 2 and length + 3 <= limits.max_len:
            for p in full:
                yield Move(THREAD_RIGHT, site=p), thread_right(w, p)
                yield Move(THREAD_LEFT, site=p), thread_left(w, p)
    yield from destabilize(w)
    for p in range(length - 2):
        if can_unthread_right(w, p):
            yield Move(UNTHREAD_RIGHT, site=p), unthread_right(w, p)
        if can_unthread_left(w, p):
            yield Move(UNTHREAD_LEFT, site=p), unthread_left(w, p)
        if _flip_pattern(w, p):
            yield Move(TRIVALENT_FLIP, site=p), trivalent_flip(w, p)
