"""Closed virtual STG diagrams in Morse-slice form.

A diagram is a top-to-bottom list of events, one per slice.  Each event acts
on 1-based columns of the current slice boundary:

    cupL p / cupR p   local maximum opening columns p, p+1 (0 in, 2 out);
                      cupL sends its left branch down, cupR its right branch
    cap p             local minimum closing columns p, p+1 (2 in, 0 out)
    xp p / xn p       classical crossing; in xp the strand running from the
                      top-left to the bottom-right passes over, in xn under
    xv p              virtual crossing
    zip p             Y-shaped vertex: columns p, p+1 above, one column below
    unzip p           lambda-shaped vertex: one column above, p, p+1 below

``zip``/``unzip`` name the geometric shape only.  Whether a vertex is a zip
or an unzip vertex in the oriented graph follows from the orientation of its
legs, which is solved globally from the cup tags.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import ArityError, NotSquare, OrientationError, WordSyntaxError
from .fingerprint import UNZIP_TAG, ZIP_TAG, Fingerprint, make_fingerprint
from .words import SIGMA_NEG, SIGMA_POS, UNZIP, VIRT, ZIP, BraidWord, Generator, strip_comment

CUP_L = "cupL"
CUP_R = "cupR"
CAP = "cap"
CROSS_POS = "xp"
CROSS_NEG = "xn"
CROSS_VIRT = "xv"
ZIP_V = "zip"
UNZIP_V = "unzip"

EVENT_KINDS = (CUP_L, CUP_R, CAP, CROSS_POS, CROSS_NEG, CROSS_VIRT, ZIP_V, UNZIP_V)
CUPS = frozenset((CUP_L, CUP_R))
CROSSINGS = frozenset((CROSS_POS, CROSS_NEG, CROSS_VIRT))
CLASSICAL = frozenset((CROSS_POS, CROSS_NEG))
VERTICES = frozenset((ZIP_V, UNZIP_V))

DOWN = "D"
UP = "U"

LETTER_EVENT = {SIGMA_POS: CROSS_POS, SIGMA_NEG: CROSS_NEG, VIRT: CROSS_VIRT, ZIP: ZIP_V, UNZIP: UNZIP_V}
EVENT_LETTER = {e: k for k, e in LETTER_EVENT.items()}

# width change and the range of legal positions (as offsets from the width)
_DELTA = {CUP_L: 2, CUP_R: 2, CAP: -2, CROSS_POS: 0, CROSS_NEG: 0, CROSS_VIRT: 0, ZIP_V: -1, UNZIP_V: 1}
_MAX_POS = {CUP_L: 1, CUP_R: 1, CAP: -1, CROSS_POS: -1, CROSS_NEG: -1, CROSS_VIRT: -1, ZIP_V: -1, UNZIP_V: 0}


class Event(NamedTuple):
    kind: str
    pos: int

    def __str__(self) -> str:
        return f"{self.kind} {self.pos}"


def event_widths(events: Iterable[Event], start: int = 0) -> list[int]:
    """Width chain; raises ArityError on an illegal position."""
    widths = [start]
    for k, e in enumerate(events):
        w = widths[-1]
        if e.kind not in _DELTA:
            raise WordSyntaxError(f"unknown event {e.kind!r}")
        if not 1 <= e.pos <= w + _MAX_POS[e.kind]:
            raise ArityError(f"slice {k + 1}: {e} illegal at width {w}")
        widths.append(w + _DELTA[e.kind])
    return widths


# --- orientation -------------------------------------------------------------

class _ParityUF:
    def __init__(self) -> None:
        self.parent: dict = {}
        self.par: dict = {}  # parity to parent

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.par[x] = 0

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the far end
        acc = 0
        for node in reversed(path):
            acc ^= self.par[node]
            self.parent[node] = root
            self.par[node] = acc
        return root

    def parity(self, x) -> int:
        self.find(x)
        return self.par[x] if self.parent[x] != x else 0

    def union(self, a, b, p: int) -> None:
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.parity(a), self.parity(b)
        if ra == rb:
            if pa ^ pb != p:
                raise OrientationError("inconsistent strand orientation")
            return
        self.parent[rb] = ra
        self.par[rb] = pa ^ pb ^ p


def solve_orientation(events: tuple[Event, ...], widths: list[int]) -> tuple[tuple[str, ...], ...]:
    """Direction of every column at every slice boundary.

    Cup tags fix the strands through them; every vertex must end up with one
    or two incoming legs.  Strands no cup reaches are oriented by a
    backtracking search that tries Down first, in reading order.
    """
    uf = _ParityUF()
    for k, w in enumerate(widths):
        for j in range(w):
            uf.add((k, j))
    fixed: list[tuple[tuple[int, int], str]] = []
    vertices: list[list[tuple[tuple[int, int], bool]]] = []  # (slot, is_upper)
    for k, e in enumerate(events):
        w = widths[k]
        p = e.pos - 1
        kind = e.kind
        if kind in CUPS:
            for j in range(w):
                uf.union((k, j), (k + 1, j if j < p else j + 2), 0)
            uf.union((k + 1, p), (k + 1, p + 1), 1)
            fixed.append(((k + 1, p), DOWN if kind == CUP_L else UP))
        elif kind == CAP:
            for j in range(w):
                if j < p:
                    uf.union((k, j), (k + 1, j), 0)
                elif j > p + 1:
                    uf.union((k, j), (k + 1, j - 2), 0)
            uf.union((k, p), (k, p + 1), 1)
        elif kind in CROSSINGS:
            for j in range(w):
                below = p + 1 if j == p else p if j == p + 1 else j
                uf.union((k, j), (k + 1, below), 0)
        elif kind == ZIP_V:
            for j in range(w):
                if j < p:
                    uf.union((k, j), (k + 1, j), 0)
                elif j > p + 1:
                    uf.union((k, j), (k + 1, j - 1), 0)
            vertices.append([((k, p), True), ((k, p + 1), True), ((k + 1, p), False)])
        elif kind == UNZIP_V:
            for j in range(w):
                if j < p:
                    uf.union((k, j), (k + 1, j), 0)
                elif j > p:
                    uf.union((k, j), (k + 1, j + 1), 0)
            vertices.append([((k, p), True), ((k + 1, p), False), ((k + 1, p + 1), False)])

    # direction of a root: value such that slot dir = root dir XOR parity
    root_dir: dict = {}
    for slot, d in fixed:
        r = uf.find(slot)
        want = d if uf.parity(slot) == 0 else _flip(d)
        if root_dir.setdefault(r, want) != want:
            raise OrientationError("cup orientations disagree along a strand")

    legs = [[(uf.find(s), uf.parity(s), upper) for s, upper in vx] for vx in vertices]
    first_slot: dict = {}
    for k, w in enumerate(widths):
        for j in range(w):
            first_slot.setdefault(uf.find((k, j)), (k, j))
    free = sorted({r for vx in legs for r, _, _ in vx if r not in root_dir}, key=lambda r: first_slot[r])
    by_root: dict = {}
    for idx, vx in enumerate(legs):
        for r, _, _ in vx:
            by_root.setdefault(r, set()).add(idx)

    def ok(idx: int) -> bool:
        ins = outs = 0
        for r, par, upper in legs[idx]:
            d = root_dir.get(r)
            if d is None:
                continue
            d = d if par == 0 else _flip(d)
            if (d == DOWN) == upper:
                ins += 1
            else:
                outs += 1
        return ins <= 2 and outs <= 2

    for idx in range(len(legs)):
        if not ok(idx):
            raise OrientationError("vertex is a sink or a source")

    def search(n: int) -> bool:
        if n == len(free):
            return True
        r = free[n]
        first_par = uf.parity(first_slot[r])
        for d in (DOWN, UP):
            root_dir[r] = d if first_par == 0 else _flip(d)
            if all(ok(i) for i in by_root[r]) and search(n + 1):
                return True
        del root_dir[r]
        return False

    if not search(0):
        raise OrientationError("no well-oriented assignment exists (sink or source vertex)")

    dirs = []
    for k, w in enumerate(widths):
        row = []
        for j in range(w):
            r = uf.find((k, j))
            d = root_dir.get(r, DOWN)
            row.append(d if uf.parity((k, j)) == 0 else _flip(d))
        dirs.append(tuple(row))
    return tuple(dirs)


def _flip(d: str) -> str:
    return UP if d == DOWN else DOWN


# --- the diagram value ---------------------------------------------------------

@dataclass(frozen=True)
class MorseDiagram:
    events: tuple[Event, ...] = ()
    dirs: tuple[tuple[str, ...], ...] = field(default=(), compare=False, repr=False)

    @property
    def widths(self) -> list[int]:
        return [len(row) for row in self.dirs]

    def __len__(self) -> int:
        return len(self.events)

    def __str__(self) -> str:
        return format_diagram(self)

    def count(self, kind: str) -> int:
        return sum(1 for e in self.events if e.kind == kind)


def make_diagram(events: Iterable[Event]) -> MorseDiagram:
    """Validate a closed event list and attach its orientation."""
    events = tuple(Event(e.kind, e.pos) for e in events)
    widths = event_widths(events)
    if widths[-1] != 0:
        raise ArityError(f"diagram ends at width {widths[-1]}, not 0")
    dirs = solve_orientation(events, widths)
    return MorseDiagram(events, dirs)


def validate(d: MorseDiagram) -> None:
    """Raise the first ArityError/OrientationError; returns None when valid."""
    widths = event_widths(d.events)
    if widths[-1] != 0:
        raise ArityError(f"diagram ends at width {widths[-1]}, not 0")
    dirs = solve_orientation(d.events, widths)
    if d.dirs and dirs != d.dirs:
        raise OrientationError("stored orientation differs from the propagated one")


def parse_diagram(text: str) -> MorseDiagram:
    """One event per line (``/`` also separates events); ``#`` comments."""
    events = []
    for line in text.splitlines():
        for chunk in strip_comment(line).split("/"):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = chunk.split()
            if len(parts) != 2 or parts[0] not in EVENT_KINDS or not parts[1].isdigit() or parts[1].startswith("0"):
                raise WordSyntaxError(f"bad event {chunk!r}")
            events.append(Event(parts[0], int(parts[1])))
    return make_diagram(events)


def format_diagram(d: MorseDiagram) -> str:
    return "\n".join(str(e) for e in d.events)


# --- closure -------------------------------------------------------------------

def close(b: BraidWord) -> MorseDiagram:
    """Plane closure with the return arcs on the right."""
    if not b.is_square:
        raise NotSquare(f"closure needs a square word, got widths {b.top_width} -> {b.bottom_width}")
    n = b.top_width
    events = [Event(CUP_L, i) for i in range(1, n + 1)]
    events += [Event(LETTER_EVENT[g.kind], g.index) for g in b.letters]
    events += [Event(CAP, i) for i in range(n, 0, -1)]
    return make_diagram(events)


# --- strand tracing ---------------------------------------------------------------

@dataclass
class Strand:
    """A maximal piece of curve between cups, caps and vertices.

    Its direction is constant; ``top``/``bottom`` are the slices of the
    events that create and end it (-1 / len(events) never occur in a closed
    diagram).
    """

    sid: int
    direction: str
    top: int
    top_col: int
    bottom: int = -1
    passes: list[int] = field(default_factory=list)  # crossing slices
    top_vertex: int | None = None
    bottom_vertex: int | None = None


def trace_strands(d: MorseDiagram) -> tuple[list[Strand], list[list[int]]]:
    """Strands and, per boundary, the strand id in each column."""
    strands: list[Strand] = []
    cols: list[int] = []
    layout = [list(cols)]

    def new(k: int, col: int) -> int:
        s = Strand(len(strands), d.dirs[k + 1][col], k, col)
        strands.append(s)
        return s.sid

    for k, e in enumerate(d.events):
        p = e.pos - 1
        if e.kind in CUPS:
            a = new(k, p)
            b = new(k, p + 1)
            cols[p:p] = [a, b]
        elif e.kind == CAP:
            strands[cols[p]].bottom = k
            strands[cols[p + 1]].bottom = k
            del cols[p:p + 2]
        elif e.kind in CROSSINGS:
            strands[cols[p]].passes.append(k)
            strands[cols[p + 1]].passes.append(k)
            cols[p], cols[p + 1] = cols[p + 1], cols[p]
        elif e.kind == ZIP_V:
            for sid in cols[p:p + 2]:
                strands[sid].bottom = k
                strands[sid].bottom_vertex = k
            c = new(k, p)
            strands[c].top_vertex = k
            cols[p:p + 2] = [c]
        elif e.kind == UNZIP_V:
            strands[cols[p]].bottom = k
            strands[cols[p]].bottom_vertex = k
            a = new(k, p)
            b = new(k, p + 1)
            strands[a].top_vertex = k
            strands[b].top_vertex = k
            cols[p:p + 1] = [a, b]
        layout.append(list(cols))
    return strands, layout


def diagram_graph(d: MorseDiagram) -> tuple[list[str], list[tuple[int, int]], int]:
    """Vertex tags, directed edges and free loop count of the underlying graph."""
    strands, _ = trace_strands(d)
    vertex_slices = [k for k, e in enumerate(d.events) if e.kind in VERTICES]
    node = {k: i for i, k in enumerate(vertex_slices)}
    # join strands through cups and caps
    link: dict[int, list[int]] = {s.sid: [] for s in strands}
    by_event: dict[tuple[str, int], list[int]] = {}
    for s in strands:
        if s.top_vertex is None:
            by_event.setdefault(("top", s.top), []).append(s.sid)
        if s.bottom_vertex is None:
            by_event.setdefault(("bottom", s.bottom), []).append(s.sid)
    for pair in by_event.values():
        a, b = pair
        link[a].append(b)
        link[b].append(a)
    ins = [0] * len(vertex_slices)
    seen: set[int] = set()
    edges = []
    loops = 0
    for s in strands:
        if s.sid in seen:
            continue
        # walk the chain containing s in both directions
        chain = [s.sid]
        seen.add(s.sid)
        stack = [s.sid]
        while stack:
            x = stack.pop()
            for y in link[x]:
                if y not in seen:
                    seen.add(y)
                    chain.append(y)
                    stack.append(y)
        ends = []
        for sid in chain:
            st = strands[sid]
            if st.top_vertex is not None:
                # strand leaves the vertex downward when directed Down
                ends.append((node[st.top_vertex], st.direction == DOWN))
            if st.bottom_vertex is not None:
                ends.append((node[st.bottom_vertex], st.direction == UP))
        if not ends:
            loops += 1
            continue
        if len(ends) != 2:
            raise AssertionError("edge with other than two vertex ends")
        (v1, out1), (v2, out2) = ends
        if out1 == out2:
            raise OrientationError("edge oriented against itself")
        src, dst = (v1, v2) if out1 else (v2, v1)
        edges.append((src, dst))
        ins[dst] += 1
    tags = []
    for i in range(len(vertex_slices)):
        if ins[i] not in (1, 2):
            raise OrientationError("vertex is a sink or a source")
        tags.append(ZIP_TAG if ins[i] == 2 else UNZIP_TAG)
    return tags, edges, loops


def fingerprint_diagram(d: MorseDiagram) -> Fingerprint:
    tags, edges, loops = diagram_graph(d)
    return make_fingerprint(tags, edges, loops)


# --- up-arcs -------------------------------------------------------------------------

@dataclass(frozen=True)
class UpArc:
    sid: int
    top: int  # slice of the event at the upper end
    top_col: int  # 0-based column just below that event
    bottom: int  # slice of the event at the lower end
    crossings: tuple[int, ...]  # slices of crossings passed, bottom-up order irrelevant
    vertices: tuple[int, ...]

    @property
    def free(self) -> bool:
        return not self.crossings and not self.vertices


def up_arcs(d: MorseDiagram) -> list[UpArc]:
    """Upward strands, topmost upper end first, then leftmost."""
    strands, _ = trace_strands(d)
    out = []
    for s in strands:
        if s.direction != UP:
            continue
        verts = tuple(v for v in (s.top_vertex, s.bottom_vertex) if v is not None)
        out.append(UpArc(s.sid, s.top, s.top_col, s.bottom, tuple(s.passes), verts))
    out.sort(key=lambda a: (a.top, a.top_col))
    return out


def vertex_legs(d: MorseDiagram, k: int) -> tuple[str, ...]:
    """Directions of the legs of the vertex at slice ``k``.

    Y shape: (upper-left, upper-right, lower); lambda: (upper, lower-left, lower-right).
    """
    e = d.events[k]
    p = e.pos - 1
    above, below = d.dirs[k], d.dirs[k + 1]
    if e.kind == ZIP_V:
        return above[p], above[p + 1], below[p]
    if e.kind == UNZIP_V:
        return above[p], below[p], below[p + 1]
    raise ValueError(f"slice {k} is not a vertex")


def is_regular(d: MorseDiagram) -> bool:
    return all(
        all(x == DOWN for x in vertex_legs(d, k)) for k, e in enumerate(d.events) if e.kind in VERTICES
    )


def to_word_letters(events: Iterable[Event]) -> tuple[Generator, ...]:
    return tuple(Generator(EVENT_LETTER[e.kind], e.pos) for e in events)
