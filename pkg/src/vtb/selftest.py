"""Embedded golden cases run by ``vtb selftest``.

Each case prints one ``PASS`` or ``FAIL`` line; the return value is the exit
status (0 when every case passes).
"""

from __future__ import annotations

from typing import Callable, Iterator, TextIO

from .braiding import braid_diagram
from .diagram import fingerprint_diagram, parse_diagram, up_arcs
from .fingerprint import fingerprint
from .rewrite import RewriteRule, relations_table
from .words import BraidWord, Generator, check_typing, format_word, l, parse_word, width_profile, y

EXAMPLE_WORD = "n=4: v3 y1 s2 S1 l3 v1"
EXAMPLE_PROFILE = [4, 4, 3, 3, 3, 4, 4]

# An irregular diagram with one unzip, one zip, two negative classical
# crossings and one virtual crossing.  Its closure graph matches the one of
# BRAIDING_TARGET below (same Gauss data).
BRAIDING_EXAMPLE = "cupL 1 / cupL 1 / xv 2 / xn 1 / xn 3 / zip 1 / unzip 2 / cap 1 / cap 1"
BRAIDING_TARGET = "n=3: l3 S3 v2 S1 v1 y2 v2 v1"


def completion(top: int, bottom: int) -> tuple[Generator, ...]:
    """Letters taking width ``bottom`` back to ``top`` on the leftmost strands."""
    if bottom < top:
        return (l(1),) * (top - bottom)
    return (y(1),) * (bottom - top)


def relation_instances(widths: range = range(2, 7)) -> Iterator[tuple[RewriteRule, int, BraidWord, BraidWord]]:
    """Every instance of every relation family, both sides closed into square words."""
    for rule in relations_table():
        for n in widths:
            for lhs, rhs in rule.instances(n):
                tail = completion(n, check_typing(n, lhs))
                yield rule, n, BraidWord(n, lhs + tail), BraidWord(n, rhs + tail)


def relation_sweep(widths: range = range(2, 7)) -> tuple[int, list[str]]:
    """Count of checked instances and a description of each failure."""
    count, bad = 0, []
    for rule, n, a, b in relation_instances(widths):
        count += 1
        if fingerprint(a) != fingerprint(b):
            bad.append(f"{rule.name} at width {n}: {format_word(a)} vs {format_word(b)}")
    return count, bad


def _example_word() -> str | None:
    w = parse_word(EXAMPLE_WORD)
    if format_word(w) != EXAMPLE_WORD:
        return "format does not round-trip"
    if width_profile(w) != EXAMPLE_PROFILE:
        return f"width profile {width_profile(w)}"
    fp = fingerprint(w)
    if (fp.zip_count, fp.unzip_count) != (1, 1):
        return f"vertex counts {fp.zip_count}, {fp.unzip_count}"
    return None


def _braiding_example() -> str | None:
    d = parse_diagram(BRAIDING_EXAMPLE)
    w, _ = braid_diagram(d)
    if fingerprint(w) != fingerprint_diagram(d):
        return "fingerprint changed"
    if fingerprint(w) != fingerprint(parse_word(BRAIDING_TARGET)):
        return "fingerprint differs from the target word"
    kinds = [g.kind for g in w.letters]
    if kinds.count("y") != 1 or kinds.count("l") != 1:
        return "expected exactly one zip and one unzip letter"
    if up_arcs(d) == []:
        return "example should contain up-arcs"
    return None


def _relations() -> str | None:
    count, bad = relation_sweep()
    if bad:
        return f"{len(bad)} of {count} instances differ, first: {bad[0]}"
    return None


CASES: list[tuple[str, Callable[[], str | None]]] = [
    ("example word round-trip", _example_word),
    ("braiding example", _braiding_example),
    ("relation soundness sweep", _relations),
]


def run_selftest(out: TextIO) -> int:
    failures = 0
    for name, case in CASES:
        try:
            problem = case()
        except Exception as exc:  # a crash is a failure, not a traceback
            problem = f"{type(exc).__name__}: {exc}"
        if problem is None:
            print(f"PASS {name}", file=out)
        else:
            failures += 1
            print(f"FAIL {name}: {problem}", file=out)
    return 1 if failures else 0
