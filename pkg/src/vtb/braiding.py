"""Turn a closed diagram into a braid word whose closure it is.

Two phases.  First every vertex is put into regular position (all three legs
pointing down) by swing moves, adding one twist crossing where the cyclic
order of the legs has to be reversed.  Then upward strands are removed one at
a time, topmost first:

* an upward strand with a classical crossing has its lowest such crossing
  redrawn between two downward strands, with the same sign and the same
  strand on top, the rest of the strand below the crossing being rerouted
  through a new braid strand;
* an upward strand with no classical crossing is cut out entirely and its two
  ends are joined through a new braid strand.

New braid strands are always added as the innermost pair of a right-hand
closure frame, and every rerouted piece meets the rest of the diagram only in
virtual crossings, so the underlying graph never changes.  When no upward
strand is left outside the frame, the body of the diagram is read off as the
word.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .diagram import (
    CAP,
    CLASSICAL,
    CROSS_NEG,
    CROSS_POS,
    CROSS_VIRT,
    CUP_L,
    CUP_R,
    CUPS,
    DOWN,
    UNZIP_V,
    VERTICES,
    ZIP_V,
    Event,
    MorseDiagram,
    UpArc,
    fingerprint_diagram,
    make_diagram,
    trace_strands,
    up_arcs,
    vertex_legs,
)
from .errors import NotRegular, VTBError
from .words import BraidWord, check_typing
from .diagram import to_word_letters

log = logging.getLogger(__name__)

REGULARIZE = "RegularizeVertex"
BRAID_CROSSING = "BraidCrossing"
BRAID_FREE_ARC = "BraidFreeArc"

U, D = "U", "D"

# Replacement blocks for vertices that are not in regular position, keyed by
# (shape, leg directions).  Offsets are relative to the vertex column; the
# twist crossing is written as None and filled with the chosen sign.
_Y_BLOCKS = {
    (D, U, D): [(UNZIP_V, 0), (CAP, 1)],
    (U, D, D): [(UNZIP_V, 1), (CAP, 0)],
    (U, D, U): [(CUP_L, 2), (None, 1), (ZIP_V, 1), (CAP, 0)],
    (D, U, U): [(CUP_R, 0), (None, 1), (ZIP_V, 1), (CAP, 1)],
    (U, U, U): [(CUP_R, 0), (UNZIP_V, 1), (None, 1), (CAP, 2), (CAP, 1)],
}
_LAMBDA_BLOCKS = {
    (D, U, D): [(CUP_R, 0), (ZIP_V, 1)],
    (D, D, U): [(CUP_L, 1), (ZIP_V, 0)],
    (U, U, D): [(CUP_R, 0), (UNZIP_V, 1), (None, 1), (CAP, 2)],
    (U, D, U): [(CUP_L, 1), (UNZIP_V, 1), (None, 1), (CAP, 0)],
    (U, U, U): [(CUP_L, 1), (CUP_L, 2), (None, 1), (ZIP_V, 1), (CAP, 0)],
}


@dataclass(frozen=True)
class BraidStep:
    kind: str
    slice: int
    column: int
    before: MorseDiagram = field(repr=False)
    after: MorseDiagram = field(repr=False)

    def __str__(self) -> str:
        return f"{self.kind} @slice {self.slice + 1} col {self.column + 1}"


@dataclass
class BraidingTrace:
    steps: list[BraidStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def format(self) -> str:
        lines = []
        for i, st in enumerate(self.steps, 1):
            body = " / ".join(str(e) for e in st.after.events)
            lines.append(f"step {i}: {st} -> {body}")
        return "\n".join(lines)


def _checked(before: MorseDiagram, events: list[Event]) -> MorseDiagram:
    after = make_diagram(events)
    if fingerprint_diagram(after) != fingerprint_diagram(before):
        raise AssertionError("braiding step changed the fingerprint")
    return after


# --- regular position ---------------------------------------------------------------

def _irregular_vertex(d: MorseDiagram) -> int | None:
    for k, e in enumerate(d.events):
        if e.kind in VERTICES and any(x != DOWN for x in vertex_legs(d, k)):
            return k
    return None


def regularize_vertex(d: MorseDiagram, k: int, twist: str = CROSS_POS) -> tuple[MorseDiagram, str]:
    """Replace the vertex at slice ``k`` by its regular-position block."""
    e = d.events[k]
    legs = vertex_legs(d, k)
    table = _Y_BLOCKS if e.kind == ZIP_V else _LAMBDA_BLOCKS
    block = table.get(legs)
    if block is None:
        raise VTBError(f"no regular-position block for {e} with legs {legs}")
    new = [Event(twist if kind is None else kind, e.pos + off) for kind, off in block]
    events = list(d.events[:k]) + new + list(d.events[k + 1:])
    return _checked(d, events), REGULARIZE


def to_regular_position(d: MorseDiagram, twist: str = CROSS_POS) -> tuple[MorseDiagram, BraidingTrace]:
    """Regular position; ``twist`` is the crossing used where legs must be reordered."""
    if twist not in CLASSICAL:
        raise ValueError("twist must be a classical crossing")
    trace = BraidingTrace()
    while (k := _irregular_vertex(d)) is not None:
        col = d.events[k].pos - 1
        after, kind = regularize_vertex(d, k, twist)
        trace.steps.append(BraidStep(kind, k, col, d, after))
        d = after
    return d, trace


# --- frame bookkeeping -----------------------------------------------------------------

def frame_size(d: MorseDiagram) -> int:
    """Number of nested closure-frame pairs wrapped around the body.

    Pair ``i`` is a ``cupL i`` opening slice ``i`` and a ``cap i`` in the
    matching slice from the end, whose right-hand (return) strand passes no
    event at all and has nothing but outer return strands to its right.
    """
    ev = d.events
    n = len(ev)
    strands, layout = trace_strands(d)
    k = 0
    while k < n // 2 and ev[k] == Event(CUP_L, k + 1) and ev[n - 1 - k] == Event(CAP, k + 1):
        sid = layout[k + 1][k + 1]
        ret = strands[sid]
        if ret.passes or ret.bottom != n - 1 - k:
            break
        if any(layout[t][len(layout[t]) - 1 - k] != sid for t in range(k + 1, n - k)):
            break
        k += 1
    return k


def body_up_arcs(d: MorseDiagram, k: int) -> list[UpArc]:
    """Upward strands other than the return arcs of the first ``k`` frame pairs."""
    return [a for a in up_arcs(d) if a.top >= k]


def _sign(line_a: str, dir_a: str, line_b: str, dir_b: str) -> int:
    """Sign of a crossing given the over strand (a) and the under strand (b)."""
    vec = {("\\", D): (1, -1), ("\\", U): (-1, 1), ("/", D): (-1, -1), ("/", U): (1, 1)}
    ox, oy = vec[(line_a, dir_a)]
    ux, uy = vec[(line_b, dir_b)]
    return 1 if ox * uy - oy * ux > 0 else -1


class _Builder:
    """Re-emit a diagram slice by slice while tracking strand labels per column."""

    def __init__(self, cols: list) -> None:
        self.cols = list(cols)
        self.events: list[Event] = []

    def emit(self, kind: str, index: int, new: tuple = ()) -> None:
        """Emit ``kind`` at 0-based ``index`` and update the labels."""
        self.events.append(Event(kind, index + 1))
        c = self.cols
        if kind in CUPS:
            c[index:index] = list(new)
        elif kind == CAP:
            del c[index:index + 2]
        elif kind in (CROSS_POS, CROSS_NEG, CROSS_VIRT):
            c[index], c[index + 1] = c[index + 1], c[index]
        elif kind == ZIP_V:
            c[index:index + 2] = list(new)
        elif kind == UNZIP_V:
            c[index:index + 1] = list(new)

    def shift(self, label, step: int) -> None:
        i = self.cols.index(label)
        self.emit(CROSS_VIRT, i if step > 0 else i - 1)

    def move_next_to(self, label, other, side: int) -> None:
        """Slide ``label`` by virtual crossings until it sits at ``side`` (-1 left, +1 right) of ``other``."""
        while True:
            i, j = self.cols.index(label), self.cols.index(other)
            if i == j + side:
                return
            self.shift(label, 1 if i < j + side else -1)

    def move_to(self, label, index: int) -> None:
        while (i := self.cols.index(label)) != index:
            self.shift(label, 1 if i < index else -1)

    def insert_index(self, old_cols: list, p: int) -> int:
        """0-based insertion index matching old insertion index ``p``."""
        present = set(self.cols)
        for q in range(p - 1, -1, -1):
            if old_cols[q] in present:
                return self.cols.index(old_cols[q]) + 1
        return 0

    def copy(self, e: Event, old_before: list, old_after: list) -> None:
        p = e.pos - 1
        if e.kind in CUPS:
            self.emit(e.kind, self.insert_index(old_before, p), (old_after[p], old_after[p + 1]))
            return
        i = self.cols.index(old_before[p])
        if e.kind == ZIP_V:
            self.emit(e.kind, i, (old_after[p],))
        elif e.kind == UNZIP_V:
            self.emit(e.kind, i, (old_after[p], old_after[p + 1]))
        else:
            if self.cols[i + 1] != old_before[p + 1]:
                raise AssertionError("columns lost adjacency while rebuilding")
            self.emit(e.kind, i)


def _reroute(d: MorseDiagram, k: int, arc: UpArc, at: int | None) -> list[Event]:
    """Core of both braiding moves.

    ``at`` is the slice of the classical crossing to redraw, or None to cut
    the whole upward strand out.
    """
    _, layout = trace_strands(d)
    s = arc.sid
    n = len(d.events)
    new_b, new_r, tail = ("B", k), ("R", k), ("T", k)
    b = _Builder(layout[k])
    events = list(d.events[:k])
    b.events = events
    b.emit(CUP_L, k, (new_b, new_r))
    cut_from = arc.top if at is None else at
    for t in range(k, n - k):
        e = d.events[t]
        before, after = layout[t], layout[t + 1]
        p = e.pos - 1
        if t == arc.top and at is None:
            # the cup that created the strand: the new braid strand takes over
            # its downward branch
            partner = after[p] if after[p + 1] == s else after[p + 1]
            b.move_to(new_b, b.insert_index(before, p))
            b.cols[b.cols.index(new_b)] = partner
        elif t == at:
            _redraw_crossing(b, d, before, t, s, new_b)
            # T is the only label that may be out of place now
            want = [x for x in after if x != s]
            other = before[p] if before[p] != s else before[p + 1]
            b.move_to(other, want.index(other))
        elif t == arc.bottom:
            partner = before[p] if before[p + 1] == s else before[p + 1]
            b.move_to(partner, b.cols.index(new_r) - 1)
            b.cols[b.cols.index(partner)] = tail
        elif cut_from < t < arc.bottom and s in before[p:p + 2] and e.kind in (CROSS_VIRT, CROSS_POS, CROSS_NEG):
            if e.kind != CROSS_VIRT:
                raise AssertionError("rerouted piece passes a classical crossing")
            continue
        else:
            b.copy(e, before, after)
    b.emit(CAP, k)
    events.extend(d.events[n - k:])
    return events


# Braiding chart for a classical crossing met by an upward strand S.  Key:
# (crossing kind, line of S, direction of the other strand), where "\\" is
# the line from the top-left to the bottom-right.  Value: (side of the other
# strand on which the new downward strand enters, kind of the new crossing).
# Both the sign and which strand is on top are preserved; the entries agree
# with the sign rule in ``_sign`` (checked by the test suite).  A virtual
# crossing met by an upward strand is the ninth case: it is dropped, because
# the rerouted strand meets everything virtually anyway.
CHART = {
    (CROSS_POS, "\\", D): (1, CROSS_NEG),
    (CROSS_POS, "\\", U): (1, CROSS_NEG),
    (CROSS_POS, "/", D): (-1, CROSS_NEG),
    (CROSS_POS, "/", U): (-1, CROSS_NEG),
    (CROSS_NEG, "\\", D): (1, CROSS_POS),
    (CROSS_NEG, "\\", U): (1, CROSS_POS),
    (CROSS_NEG, "/", D): (-1, CROSS_POS),
    (CROSS_NEG, "/", U): (-1, CROSS_POS),
}


def _redraw_crossing(b: _Builder, d: MorseDiagram, before: list, t: int, s: int, new_b) -> None:
    e = d.events[t]
    p = e.pos - 1
    other = before[p] if before[p + 1] == s else before[p + 1]
    s_line = "\\" if before[p] == s else "/"
    o_dir = d.dirs[t][p if before[p] == other else p + 1]
    side, kind = CHART[(e.kind, s_line, o_dir)]
    b.move_next_to(new_b, other, side)
    b.emit(kind, min(b.cols.index(new_b), b.cols.index(other)))
    # the new strand leaves the crossing downward and turns up into what is
    # left of the upward strand above it
    b.move_next_to(new_b, s, -1 if b.cols.index(new_b) < b.cols.index(s) else 1)
    b.emit(CAP, min(b.cols.index(new_b), b.cols.index(s)))


def braid_step(d: MorseDiagram, k: int | None = None) -> tuple[MorseDiagram, BraidStep] | None:
    """One braiding move on the first upward strand outside the frame, or None."""
    if k is None:
        k = frame_size(d)
    arcs = body_up_arcs(d, k)
    if not arcs:
        return None
    arc = arcs[0]
    if arc.vertices:
        raise NotRegular("an upward strand ends at a vertex leg")
    classical = [t for t in arc.crossings if d.events[t].kind in CLASSICAL]
    at = max(classical) if classical else None
    events = _reroute(d, k, arc, at)
    after = _checked(d, events)
    kind = BRAID_FREE_ARC if at is None else BRAID_CROSSING
    slice_, col = (arc.top, arc.top_col) if at is None else (at, d.events[at].pos - 1)
    return after, BraidStep(kind, slice_, col, d, after)


def potential(d: MorseDiagram, k: int | None = None) -> int:
    """Upward strands outside the frame plus their classical crossing incidences."""
    if k is None:
        k = frame_size(d)
    arcs = body_up_arcs(d, k)
    return len(arcs) + sum(1 for a in arcs for t in a.crossings if d.events[t].kind in CLASSICAL)


def extract_word(d: MorseDiagram) -> BraidWord:
    """Read the braid off a diagram that is a right-hand closure."""
    k = frame_size(d)
    if k == 0:
        raise VTBError("diagram is not a braid closure")
    body = d.events[k:len(d.events) - k]
    if any(e.kind in CUPS or e.kind == CAP for e in body):
        raise VTBError("diagram body still has maxima or minima")
    if body_up_arcs(d, k):
        raise VTBError("diagram body still has upward strands")
    letters = to_word_letters(body)
    check_typing(k, letters)
    return BraidWord(k, letters)


def braid_diagram(d: MorseDiagram, twist: str = CROSS_POS) -> tuple[BraidWord, BraidingTrace]:
    """Regular position, then braiding moves until only the frame is left."""
    if not d.events:
        raise VTBError("the empty diagram is not the closure of any braid")
    d, trace = to_regular_position(d, twist)
    k = frame_size(d)
    while True:
        res = braid_step(d, k)
        if res is None:
            break
        d, step = res
        trace.steps.append(step)
        k += 1
        log.debug("%s, frame %d", step, k)
    return extract_word(d), trace
