"""Bounded bidirectional search for algebraic equivalence of square words.

States are canonical forms.  Both frontiers grow one full layer per round,
so the verdict does not depend on which word is given first.  A certificate
is a list of moves that :func:`vtb.markov.replay` takes from the first word
exactly to the second; ``IsotopyTo`` steps bridge a raw move result and its
canonical form.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Union

from .fingerprint import Fingerprint, fingerprint
from .markov import ISOTOPY_TO, NORMALIZED_RULES, Limits, Move, apply_move, inverse_move, iter_markov_neighbors, replay
from .rewrite import canonical_form
from .words import BraidWord, format_word

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Budget:
    max_word_len: int = 16
    max_width: int = 6
    max_states: int = 200_000
    max_depth: int = 8

    def __post_init__(self) -> None:
        for name in ("max_word_len", "max_width", "max_states", "max_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @property
    def limits(self) -> Limits:
        return Limits(self.max_word_len, self.max_width)


@dataclass(frozen=True)
class Equivalent:
    path: list[Move] = field(default_factory=list)
    states_explored: int = 0
    kind = "Equivalent"


@dataclass(frozen=True)
class Refuted:
    witness: tuple[Fingerprint, Fingerprint]
    states_explored: int = 0
    kind = "Refuted"


@dataclass(frozen=True)
class Unknown:
    states_explored: int
    kind = "Unknown"


Verdict = Union[Equivalent, Refuted, Unknown]


class _BudgetExceeded(Exception):
    pass


# parent record: (previous state, move applied to it); the raw result of the
# move is recomputed when a certificate is built, which keeps the table small
_Parent = tuple[BraidWord, Move]


class _Side:
    def __init__(self, root: BraidWord):
        self.root = root
        self.parent: dict[BraidWord, _Parent | None] = {root: None}
        self.depth: dict[BraidWord, int] = {root: 0}
        self.frontier: list[BraidWord] = [root]

    def expand(self, limits: Limits, counter: list[int], max_states: int) -> None:
        nxt: list[BraidWord] = []
        for state in self.frontier:
            d = self.depth[state] + 1
            for move, raw in iter_markov_neighbors(state, limits, NORMALIZED_RULES):
                if len(raw) > limits.max_len or raw.top_width > limits.max_width:
                    continue
                canon = canonical_form(raw)
                if canon in self.parent:
                    continue
                self.parent[canon] = (state, move)
                self.depth[canon] = d
                nxt.append(canon)
                counter[0] += 1
                if counter[0] > max_states:
                    raise _BudgetExceeded
        self.frontier = nxt

    def chain(self, state: BraidWord) -> list[tuple[BraidWord, Move, BraidWord, BraidWord]]:
        """Edges (before, move, raw, after) from the root to ``state``."""
        edges = []
        while True:
            rec = self.parent[state]
            if rec is None:
                break
            before, move = rec
            edges.append((before, move, apply_move(before, move), state))
            state = before
        edges.reverse()
        return edges


def _certificate(w1: BraidWord, w2: BraidWord, fwd: _Side, bwd: _Side, meet: BraidWord) -> list[Move]:
    path: list[Move] = []
    cur = w1

    def go(target: BraidWord) -> None:
        nonlocal cur
        if cur != target:
            path.append(Move(ISOTOPY_TO, target=target))
            cur = target

    go(fwd.root)
    for _before, move, raw, after in fwd.chain(meet):
        path.append(move)
        cur = raw
        go(after)
    for before, move, raw, _after in reversed(bwd.chain(meet)):
        go(raw)
        inv = inverse_move(move, before)
        path.append(inv)
        cur = apply_move(raw, inv)
        go(before)
    go(w2)
    return path


def check_equiv(w1: BraidWord, w2: BraidWord, budget: Budget | None = None) -> Verdict:
    """Equivalent with a replayable certificate, Refuted, or Unknown."""
    budget = budget or Budget()
    f1, f2 = fingerprint(w1), fingerprint(w2)
    if f1 != f2:
        return Refuted((f1, f2), 0)
    if w1 == w2:
        return Equivalent([], 0)
    fwd = _Side(canonical_form(w1))
    bwd = _Side(canonical_form(w2))
    counter = [2]
    limits = budget.limits
    rounds = (budget.max_depth + 1) // 2
    meet = _meeting(fwd, bwd, budget.max_depth)
    for _ in range(rounds):
        if meet is not None:
            break
        try:
            fwd.expand(limits, counter, budget.max_states)
            bwd.expand(limits, counter, budget.max_states)
        except _BudgetExceeded:
            log.debug("state budget %d exhausted", budget.max_states)
            return Unknown(counter[0])
        meet = _meeting(fwd, bwd, budget.max_depth)
        if not fwd.frontier and not bwd.frontier:
            break
    if meet is None:
        return Unknown(counter[0])
    path = _certificate(w1, w2, fwd, bwd, meet)
    if replay(w1, path) != w2:
        raise AssertionError("certificate does not replay")
    return Equivalent(path, counter[0])


def _meeting(fwd: _Side, bwd: _Side, max_depth: int) -> BraidWord | None:
    small, large = (fwd, bwd) if len(fwd.parent) <= len(bwd.parent) else (bwd, fwd)
    best = None
    for state in small.parent:
        if state in large.parent:
            total = fwd.depth[state] + bwd.depth[state]
            if total > max_depth:
                continue
            key = (total, format_word(state))
            if best is None or key < best[0]:
                best = (key, state)
    return None if best is None else best[1]
