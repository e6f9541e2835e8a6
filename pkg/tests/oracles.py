"""Independent reference computations used by the tests.

The Gauss-data oracle reads a Morse diagram through ``trace_strands`` only
and records, for every edge of the closure graph, the sequence of classical
crossings it meets (crossing label, over or under, sign).  The crossing sign
is computed here from plane vectors, independently of the braiding module.
Two diagrams with equal canonical Gauss data are isotopic as abstract virtual
graph diagrams, which is a much stronger check than the closure fingerprint.
"""

from __future__ import annotations

import itertools
import random

from vtb.diagram import CAP, CROSS_NEG, CROSS_POS, CUP_L, CUP_R, DOWN, UNZIP_V, ZIP_V, Event, MorseDiagram, make_diagram, trace_strands
from vtb.errors import VTBError

_WIDTH_CHANGE = {CUP_L: 2, CUP_R: 2, CAP: -2, ZIP_V: -1, UNZIP_V: 1}
_RANDOM_KINDS = (CUP_L, CUP_R, CAP, CROSS_POS, CROSS_NEG, "xv", ZIP_V, UNZIP_V)


def _position_range(kind: str, w: int) -> tuple[int, int]:
    if kind in (CUP_L, CUP_R):
        return 1, w + 1
    if kind == UNZIP_V:
        return 1, w
    return 1, w - 1


def random_diagram(rng: random.Random, events: int = 8, max_width: int = 6) -> MorseDiagram:
    """A random valid diagram: random events, then caps until the width is 0."""
    while True:
        out, w = [], 0
        for _ in range(events):
            options = []
            for kind in _RANDOM_KINDS:
                lo, hi = _position_range(kind, w)
                grows = _WIDTH_CHANGE.get(kind, 0) > 0
                if hi >= lo and not (grows and w >= max_width):
                    options.append((kind, lo, hi))
            kind, lo, hi = rng.choice(options)
            out.append(Event(kind, rng.randint(lo, hi)))
            w += _WIDTH_CHANGE.get(kind, 0)
        while w >= 2:
            out.append(Event(CAP, rng.randint(1, w - 1)))
            w -= 2
        if w != 0:
            continue
        try:
            return make_diagram(out)
        except VTBError:
            continue


def _vector(line: str, direction: str) -> tuple[int, int]:
    # screen coordinates: x to the right, y downward
    dx, dy = (1, 1) if line == "\\" else (-1, 1)
    return (dx, dy) if direction == DOWN else (-dx, -dy)


def crossing_sign(over_line: str, over_dir: str, under_line: str, under_dir: str) -> int:
    """+1 when the (over, under) frame is the one of a positive braid generator."""
    ox, oy = _vector(over_line, over_dir)
    ux, uy = _vector(under_line, under_dir)
    return 1 if ox * uy - oy * ux > 0 else -1


def _crossing_info(d: MorseDiagram, layout) -> dict[int, tuple[int, int, int]]:
    info = {}
    for t, e in enumerate(d.events):
        if e.kind not in (CROSS_POS, CROSS_NEG):
            continue
        p = e.pos - 1
        left, right = layout[t][p], layout[t][p + 1]
        dl, dr = d.dirs[t][p], d.dirs[t][p + 1]
        if e.kind == CROSS_POS:  # the "\" strand, entering at the left, is over
            info[t] = (left, right, crossing_sign("\\", dl, "/", dr))
        else:
            info[t] = (right, left, crossing_sign("/", dr, "\\", dl))
    return info


def graph_gauss(d: MorseDiagram):
    """Edges as (source vertex, target vertex, crossings met) plus the free loops."""
    strands, layout = trace_strands(d)
    info = _crossing_info(d, layout)
    ends: dict[tuple[str, int], list[int]] = {}
    for s in strands:
        if s.top_vertex is None:
            ends.setdefault(("top", s.top), []).append(s.sid)
        if s.bottom_vertex is None:
            ends.setdefault(("bot", s.bottom), []).append(s.sid)

    def forward(s):
        key = ("bot", s.bottom) if s.direction == DOWN else ("top", s.top)
        a, b = ends[key]
        return strands[b if a == s.sid else a]

    def met(s):
        order = sorted(s.passes, reverse=s.direction != DOWN)
        return [(t, "O" if info[t][0] == s.sid else "U", info[t][2]) for t in order if t in info]

    edges, seen = [], set()
    for s in strands:
        start = s.top_vertex if s.direction == DOWN else s.bottom_vertex
        if start is None:
            continue
        code, cur = [], s
        while True:
            seen.add(cur.sid)
            code += met(cur)
            end = cur.bottom_vertex if cur.direction == DOWN else cur.top_vertex
            if end is not None:
                break
            cur = forward(cur)
        edges.append((start, end, code))
    loops = []
    for s in strands:
        if s.sid in seen:
            continue
        code, cur = [], s
        while cur.sid not in seen:
            seen.add(cur.sid)
            code += met(cur)
            cur = forward(cur)
        loops.append(code)
    return edges, loops


def canonical_gauss(d: MorseDiagram):
    """Gauss data minimised over relabellings of vertices and crossings."""
    edges, loops = graph_gauss(d)
    verts = sorted({v for a, b, _ in edges for v in (a, b)})
    xs = sorted({t for _, _, c in edges for t, _, _ in c} | {t for c in loops for t, _, _ in c})
    best = None
    for vp in itertools.permutations(range(len(verts))):
        vm = dict(zip(verts, vp))
        for cp in itertools.permutations(range(len(xs))):
            xm = dict(zip(xs, cp))
            enc = tuple(sorted((vm[a], vm[b], tuple((xm[t], o, s) for t, o, s in c)) for a, b, c in edges))
            lp = tuple(sorted(
                min(tuple((xm[t], o, s) for t, o, s in c[r:] + c[:r]) for r in range(max(1, len(c))))
                for c in loops
            ))
            if best is None or (enc, lp) < best:
                best = (enc, lp)
    return best


def multigraphs_isomorphic(tags_a, edges_a, tags_b, edges_b) -> bool:
    """Brute force: some tag-preserving bijection maps one edge multiset onto the other."""
    if sorted(tags_a) != sorted(tags_b) or len(edges_a) != len(edges_b):
        return False
    target = sorted(edges_b)
    for perm in itertools.permutations(range(len(tags_b))):
        if any(tags_a[i] != tags_b[perm[i]] for i in range(len(tags_a))):
            continue
        if sorted((perm[a], perm[b]) for a, b in edges_a) == target:
            return True
    return False
