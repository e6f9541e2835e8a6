"""Deterministic SVG and ASCII pictures of braid words and Morse diagrams.

Both renderers walk the slices top to bottom.  Column ``j`` of every slice
boundary sits at a fixed horizontal offset, so strands that survive an event
are drawn as straight segments from their old to their new column.
"""

from __future__ import annotations

from .diagram import (
    CAP,
    CROSS_NEG,
    CROSS_POS,
    CROSS_VIRT,
    CROSSINGS,
    CUP_L,
    CUP_R,
    CUPS,
    DOWN,
    LETTER_EVENT,
    UNZIP_V,
    ZIP_V,
    Event,
    MorseDiagram,
)
from .words import BraidWord

COL = 40  # horizontal spacing of columns
ROW = 40  # height of one slice
MARGIN = 20
GAP = 7  # half-length of the gap in the under strand
VIRTUAL_RADIUS = 7
DOT_RADIUS = 4


def _events_of(obj: BraidWord | MorseDiagram) -> tuple[list[Event], int, list[tuple[str, ...]] | None]:
    if isinstance(obj, BraidWord):
        return [Event(LETTER_EVENT[g.kind], g.index) for g in obj.letters], obj.top_width, None
    return list(obj.events), 0, list(obj.dirs)


def _layouts(events: list[Event], start: int) -> list[list[int]]:
    """Strand labels per boundary; new strands get fresh labels."""
    cols = list(range(start))
    fresh = start
    out = [list(cols)]
    for e in events:
        p = e.pos - 1
        if e.kind in CUPS:
            cols[p:p] = [fresh, fresh + 1]
            fresh += 2
        elif e.kind == CAP:
            del cols[p:p + 2]
        elif e.kind in CROSSINGS:
            cols[p], cols[p + 1] = cols[p + 1], cols[p]
        elif e.kind == ZIP_V:
            cols[p:p + 2] = [fresh]
            fresh += 1
        elif e.kind == UNZIP_V:
            cols[p:p + 1] = [fresh, fresh + 1]
            fresh += 2
        out.append(list(cols))
    return out


# --- SVG -------------------------------------------------------------------------------

def _x(j: int) -> int:
    return MARGIN + COL * j


def _y(k: int) -> int:
    return MARGIN + ROW * k


def _line(x1: float, y1: float, x2: float, y2: float) -> str:
    return f'<line x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}"/>'


def _under(x1: float, y1: float, x2: float, y2: float) -> list[str]:
    """A segment with a gap around its midpoint."""
    mx, my = (x1 + x2) / 2, (y1 + y2) / 2
    dx, dy = x2 - x1, y2 - y1
    length = (dx * dx + dy * dy) ** 0.5
    ux, uy = dx / length * GAP, dy / length * GAP
    return [_line(x1, y1, mx - ux, my - uy), _line(mx + ux, my + uy, x2, y2)]


def render_svg(obj: BraidWord | MorseDiagram) -> str:
    events, start, _ = _events_of(obj)
    layouts = _layouts(events, start)
    width = max(max((len(c) for c in layouts), default=0), 1)
    w_px = 2 * MARGIN + COL * (width - 1)
    h_px = 2 * MARGIN + ROW * max(len(events), 1)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w_px}" height="{h_px}" '
        f'viewBox="0 0 {w_px} {h_px}">',
        '<g fill="none" stroke="black" stroke-width="2">',
    ]
    if not events:
        parts.append('<g class="strands">')
        parts += [_line(_x(j), _y(0), _x(j), _y(1)) for j in range(start)]
        parts.append("</g>")
    for k, e in enumerate(events):
        above, below = layouts[k], layouts[k + 1]
        y0, y1 = _y(k), _y(k + 1)
        p = e.pos - 1
        touched = set()
        glyph: list[str] = []
        if e.kind in CROSSINGS:
            a, b = above[p], above[p + 1]
            touched = {a, b}
            down = _line(_x(p), y0, _x(p + 1), y1)  # the "\" strand
            up = _line(_x(p + 1), y0, _x(p), y1)  # the "/" strand
            if e.kind == CROSS_VIRT:
                cx, cy = (_x(p) + _x(p + 1)) / 2, (y0 + y1) / 2
                glyph = [down, up, f'<circle class="virtual" cx="{cx:g}" cy="{cy:g}" r="{VIRTUAL_RADIUS}"/>']
            elif e.kind == CROSS_POS:
                glyph = [down] + _under(_x(p + 1), y0, _x(p), y1)
            else:
                glyph = [up] + _under(_x(p), y0, _x(p + 1), y1)
            parts.append(f'<g class="crossing {e.kind}">')
        elif e.kind in (ZIP_V, UNZIP_V):
            vx, vy = _x(p), (y0 + y1) / 2
            if e.kind == ZIP_V:
                touched = {above[p], above[p + 1], below[p]}
                glyph = [_line(_x(p), y0, vx, vy), _line(_x(p + 1), y0, vx, vy), _line(vx, vy, _x(p), y1)]
            else:
                touched = {above[p], below[p], below[p + 1]}
                glyph = [_line(_x(p), y0, vx, vy), _line(vx, vy, _x(p), y1), _line(vx, vy, _x(p + 1), y1)]
            glyph.append(f'<circle class="vertex" cx="{vx:g}" cy="{vy:g}" r="{DOT_RADIUS}" fill="black"/>')
            parts.append(f'<g class="{e.kind}">')
        elif e.kind in CUPS:
            touched = {below[p], below[p + 1]}
            glyph = [f'<path d="M {_x(p)} {y1} C {_x(p)} {y0} {_x(p + 1)} {y0} {_x(p + 1)} {y1}"/>']
            parts.append(f'<g class="{e.kind}">')
        elif e.kind == CAP:
            touched = {above[p], above[p + 1]}
            glyph = [f'<path d="M {_x(p)} {y0} C {_x(p)} {y1} {_x(p + 1)} {y1} {_x(p + 1)} {y0}"/>']
            parts.append('<g class="cap">')
        parts += glyph
        parts.append("</g>")
        routing = [
            _line(_x(above.index(lab)), y0, _x(below.index(lab)), y1)
            for lab in above
            if lab not in touched and lab in below
        ]
        if routing:
            parts.append('<g class="strands">')
            parts += routing
            parts.append("</g>")
    parts += ["</g>", "</svg>"]
    return "\n".join(parts) + "\n"


# --- ASCII -------------------------------------------------------------------------------

# Five-character glyphs spanning two neighbouring columns (four apart).
ASCII_GLYPHS = {
    CROSS_POS: "\\ + /",
    CROSS_NEG: "\\ - /",
    CROSS_VIRT: "\\ o /",
    ZIP_V: "\\ Y /",
    UNZIP_V: "/ L \\",
    CUP_L: "/-v-\\",
    CUP_R: "/-^-\\",
    CAP: "\\___/",
}
_SPACING = 4


def _strand_row(dirs: tuple[str, ...] | None, width: int) -> list[str]:
    row = [" "] * max(_SPACING * (width - 1) + 1, 1)
    for j in range(width):
        row[_SPACING * j] = "|" if dirs is None or dirs[j] == DOWN else "^"
    return row


def render_ascii(obj: BraidWord | MorseDiagram) -> str:
    """One line per slice boundary and one per event.

    Strands are ``|`` (downward) or ``^`` (upward); events use ASCII_GLYPHS,
    drawn on the wider of the two boundaries they join.
    """
    events, start, dirs = _events_of(obj)
    layouts = _layouts(events, start)

    def boundary(k: int) -> str:
        return "".join(_strand_row(dirs[k] if dirs else None, len(layouts[k]))).rstrip()

    lines = [boundary(0)]
    for k, e in enumerate(events):
        wide = k + 1 if len(layouts[k + 1]) > len(layouts[k]) else k
        row = _strand_row(dirs[wide] if dirs else None, len(layouts[wide]))
        glyph = ASCII_GLYPHS[e.kind]
        x = _SPACING * (e.pos - 1)
        row += [" "] * (x + len(glyph) - len(row))
        row[x:x + len(glyph)] = list(glyph)
        lines.append("".join(row).rstrip())
        lines.append(boundary(k + 1))
    if not events:
        lines.append(boundary(0))
    return "\n".join(lines) + "\n"


def render(obj: BraidWord | MorseDiagram, fmt: str = "svg") -> str:
    if fmt == "svg":
        return render_svg(obj)
    if fmt == "ascii":
        return render_ascii(obj)
    raise ValueError(f"unknown format {fmt!r}")

