"""Typed words over the elementary virtual trivalent braid letters.

A letter is one of

    s<i>  positive classical crossing of strands i, i+1
    S<i>  negative classical crossing
    v<i>  virtual crossing
    y<i>  zip vertex merging strands i, i+1 (width n -> n-1)
    l<i>  unzip vertex splitting strand i (width n -> n+1)

Words are read top to bottom and always carry their top width, so
``BraidWord(4, ...)`` is a word in VTB^4_k for the k given by the letters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import (
    NotInvertible,
    TypingError,
    WidthLimitExceeded,
    WidthMismatch,
    WordSyntaxError,
)

SIGMA_POS = "s"
SIGMA_NEG = "S"
VIRT = "v"
ZIP = "y"
UNZIP = "l"

KINDS = (SIGMA_POS, SIGMA_NEG, VIRT, ZIP, UNZIP)
KIND_RANK = {k: r for r, k in enumerate(KINDS)}
CROSSING_KINDS = frozenset((SIGMA_POS, SIGMA_NEG, VIRT))

MAX_WIDTH = 64


class Generator(NamedTuple):
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @property
    def sort_key(self) -> tuple[int, int]:
        return KIND_RANK[self.kind], self.index

    def width_delta(self) -> int:
        if self.kind == ZIP:
            return -1
        if self.kind == UNZIP:
            return 1
        return 0

    def legal_at(self, width: int) -> bool:
        if self.index < 1:
            return False
        if self.kind == UNZIP:
            return self.index <= width
        return self.index <= width - 1

    def inverse(self) -> "Generator":
        if self.kind == SIGMA_POS:
            return Generator(SIGMA_NEG, self.index)
        if self.kind == SIGMA_NEG:
            return Generator(SIGMA_POS, self.index)
        if self.kind == VIRT:
            return self
        raise NotInvertible(f"{self} has no inverse")

    def shifted(self, by: int) -> "Generator":
        return Generator(self.kind, self.index + by)


def s(i: int) -> Generator:
    return Generator(SIGMA_POS, i)


def S(i: int) -> Generator:
    return Generator(SIGMA_NEG, i)


def v(i: int) -> Generator:
    return Generator(VIRT, i)


def y(i: int) -> Generator:
    return Generator(ZIP, i)


def l(i: int) -> Generator:  # noqa: E743
    return Generator(UNZIP, i)


def check_typing(top_width: int, letters: Iterable[Generator], max_width: int = MAX_WIDTH) -> int:
    """Walk the width chain and return the bottom width.

    Raises TypingError at the first illegal letter (1-based position).
    """
    if top_width < 1:
        raise TypingError(0, top_width, "n")
    width = top_width
    for pos, (kind, index) in enumerate(letters, start=1):
        if kind == UNZIP:
            if not 1 <= index <= width:
                raise TypingError(pos, width, f"{kind}{index}")
            width += 1
        elif kind in KIND_RANK and 1 <= index <= width - 1:
            if kind == ZIP:
                width -= 1
        else:
            raise TypingError(pos, width, f"{kind}{index}")
        if width > max_width:
            raise WidthLimitExceeded(f"width {width} exceeds {max_width}")
    return width


@dataclass(frozen=True)
class BraidWord:
    top_width: int
    letters: tuple[Generator, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "_bottom", check_typing(self.top_width, self.letters))

    @property
    def bottom_width(self) -> int:
        return self._bottom  # type: ignore[attr-defined]

    @property
    def is_square(self) -> bool:
        return self.bottom_width == self.top_width

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"BraidWord({format_word(self)!r})"

    def count(self, kind: str) -> int:
        return sum(1 for g in self.letters if g.kind == kind)

    def with_letters(self, letters: Iterable[Generator]) -> "BraidWord":
        return BraidWord(self.top_width, tuple(letters))


def identity(n: int) -> BraidWord:
    return BraidWord(n, ())


_HEADER = re.compile(r"n=([1-9][0-9]*):")
_TOKEN = re.compile(r"([sSvyl])([1-9][0-9]*)")


def strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_word(text: str) -> BraidWord:
    """Parse ``n=<m>: tok tok ...`` into a width-checked word."""
    body = strip_comment(text).strip()
    m = _HEADER.match(body)
    if m is None:
        raise WordSyntaxError(f"missing header 'n=<width>:' in {text!r}")
    rest = body[m.end():]
    if rest and not rest[0].isspace():
        raise WordSyntaxError(f"expected space after header in {text!r}")
    letters = []
    for tok in rest.split():
        tm = _TOKEN.fullmatch(tok)
        if tm is None:
            raise WordSyntaxError(f"bad token {tok!r}")
        letters.append(Generator(tm.group(1), int(tm.group(2))))
    return BraidWord(int(m.group(1)), tuple(letters))


def parse_words(text: str) -> list[BraidWord]:
    """One word per non-blank line; ``#`` starts a comment."""
    return [parse_word(line) for line in text.splitlines() if strip_comment(line).strip()]


def format_word(w: BraidWord) -> str:
    head = f"n={w.top_width}:"
    if not w.letters:
        return head
    return head + " " + " ".join(map(str, w.letters))


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    """``a`` on top of ``b``."""
    if a.bottom_width != b.top_width:
        raise WidthMismatch(f"bottom width {a.bottom_width} != top width {b.top_width}")
    return BraidWord(a.top_width, a.letters + b.letters)


def width_profile(w: BraidWord) -> list[int]:
    widths = [w.top_width]
    for g in w.letters:
        widths.append(widths[-1] + g.width_delta())
    return widths


def embed_right(w: BraidWord, k: int = 1) -> BraidWord:
    """Add ``k`` identity strands on the right."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return BraidWord(w.top_width + k, w.letters)


def embed_left(w: BraidWord) -> BraidWord:
    """Add one identity strand on the left (the operator i(w))."""
    return BraidWord(w.top_width + 1, tuple(g.shifted(1) for g in w.letters))


def invert(w: BraidWord) -> BraidWord:
    for g in w.letters:
        if g.kind not in CROSSING_KINDS:
            raise NotInvertible(f"{g} is a vertex letter")
    return BraidWord(w.bottom_width, tuple(g.inverse() for g in reversed(w.letters)))
