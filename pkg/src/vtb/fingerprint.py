"""Closure fingerprint: the underlying directed graph of a braid closure.

Crossings (classical or virtual) do not appear in the fingerprint; they only
permute strands. What survives is the trivalent graph itself, with every
vertex tagged zip or unzip, plus the number of vertex-free closed components.
Both are invariant under every isotopy and Markov move, which makes the
fingerprint a cheap refutation device for the equivalence engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import GraphTooLarge, HasVertices, NotSquare
from .words import CROSSING_KINDS, UNZIP, ZIP, BraidWord

MAX_VERTICES = 10

ZIP_TAG = "z"
UNZIP_TAG = "u"


@dataclass(frozen=True)
class Fingerprint:
    zip_count: int
    unzip_count: int
    free_loops: int
    # node tags in canonical order (all zips, then all unzips) and the
    # sorted list of directed edges between canonical labels
    nodes: tuple[str, ...] = ()
    edges: tuple[tuple[int, int], ...] = ()

    def graph_text(self) -> str:
        names = _node_names(self.nodes)
        return ",".join(f"{names[a]}>{names[b]}" for a, b in self.edges)

    def __str__(self) -> str:
        return (
            f"zip={self.zip_count} unzip={self.unzip_count} "
            f"loops={self.free_loops} graph={self.graph_text()}"
        )


def _node_names(nodes: Sequence[str]) -> list[str]:
    counts = {ZIP_TAG: 0, UNZIP_TAG: 0}
    names = []
    for tag in nodes:
        names.append(f"{tag}{counts[tag]}")
        counts[tag] += 1
    return names


def fingerprints_equal(a: Fingerprint, b: Fingerprint) -> bool:
    return a == b


def _refine(tags: Sequence[str], edges: Sequence[tuple[int, int]]) -> list[int]:
    """Colour refinement; returns a colour per node, stable under relabelling."""
    n = len(tags)
    out_nb: list[list[int]] = [[] for _ in range(n)]
    in_nb: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        out_nb[a].append(b)
        in_nb[b].append(a)
    colour = [0 if t == ZIP_TAG else 1 for t in tags]
    while True:
        sigs = [
            (colour[x], tuple(sorted(colour[t] for t in out_nb[x])), tuple(sorted(colour[t] for t in in_nb[x])))
            for x in range(n)
        ]
        palette = {sig: k for k, sig in enumerate(sorted(set(sigs)))}
        new = [palette[sig] for sig in sigs]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def canonical_graph(
    tags: Sequence[str], edges: Sequence[tuple[int, int]]
) -> tuple[tuple[str, ...], tuple[tuple[int, int], ...]]:
    """Minimum sorted edge list over all labellings that respect refined colours.

    Exact: colours are isomorphism-invariant, so isomorphic graphs produce the
    same cells and hence the same minimum.
    """
    n = len(tags)
    if n > MAX_VERTICES:
        raise GraphTooLarge(f"{n} vertices exceed the cutoff of {MAX_VERTICES}")
    if n == 0:
        return (), ()
    colour = _refine(tags, edges)
    cells: dict[int, list[int]] = {}
    for x in range(n):
        cells.setdefault(colour[x], []).append(x)
    # zip colours sort before unzip colours because the initial colour is the tag
    ordered = [cells[c] for c in sorted(cells)]
    offsets = []
    base = 0
    for cell in ordered:
        offsets.append(base)
        base += len(cell)
    best = None
    for perms in itertools.product(*(itertools.permutations(cell) for cell in ordered)):
        label = [0] * n
        for off, perm in zip(offsets, perms):
            for k, x in enumerate(perm):
                label[x] = off + k
        enc = tuple(sorted((label[a], label[b]) for a, b in edges))
        if best is None or enc < best:
            best = enc
    canon_tags = tuple(tags[cell[0]] for cell in ordered for _ in cell)
    return canon_tags, best


def make_fingerprint(tags: Sequence[str], edges: Sequence[tuple[int, int]], free_loops: int) -> Fingerprint:
    nodes, canon = canonical_graph(tags, edges)
    return Fingerprint(
        zip_count=sum(1 for t in tags if t == ZIP_TAG),
        unzip_count=sum(1 for t in tags if t == UNZIP_TAG),
        free_loops=free_loops,
        nodes=nodes,
        edges=canon,
    )


def closure_graph(w: BraidWord) -> tuple[list[str], list[tuple[int, int]], int]:
    """Trace the closure of a square word.

    Returns (vertex tags, directed vertex-to-vertex edges, free loop count).
    """
    if not w.is_square:
        raise NotSquare(f"word has widths {w.top_width} -> {w.bottom_width}")
    n = w.top_width
    # arc k < n starts at top endpoint k; later arcs start at a vertex
    arc_src: list[int | None] = [None] * n
    ends_at_bottom: dict[int, int] = {}
    tags: list[str] = []
    cur = list(range(n))
    dst: dict[int, int] = {}

    def new_arc(src: int | None) -> int:
        arc_src.append(src)
        return len(arc_src) - 1

    for g in w.letters:
        i = g.index - 1
        if g.kind in CROSSING_KINDS:
            cur[i], cur[i + 1] = cur[i + 1], cur[i]
        elif g.kind == ZIP:
            node = len(tags)
            tags.append(ZIP_TAG)
            dst[cur[i]] = node
            dst[cur[i + 1]] = node
            cur[i:i + 2] = [new_arc(node)]
        elif g.kind == UNZIP:
            node = len(tags)
            tags.append(UNZIP_TAG)
            dst[cur[i]] = node
            cur[i:i + 1] = [new_arc(node), new_arc(node)]
    for k, arc in enumerate(cur):
        ends_at_bottom[arc] = k

    edges = []
    used_top = set()
    for arc, src in enumerate(arc_src):
        if src is None:
            continue
        a = arc
        while a not in dst:
            a = ends_at_bottom[a]  # closure: bottom k continues as top arc k
            used_top.add(a)
        edges.append((src, dst[a]))
    # vertex-free components: cycles of top arcs never visited from a vertex
    loops = 0
    visited = set(used_top)
    for k in range(n):
        if k in visited or k in dst:
            continue
        a = k
        chain = []
        while a not in visited and a not in dst:
            visited.add(a)
            chain.append(a)
            a = ends_at_bottom[a]
        if a in chain:
            loops += 1
    return tags, edges, loops


def fingerprint(w: BraidWord) -> Fingerprint:
    tags, edges, loops = closure_graph(w)
    return make_fingerprint(tags, edges, loops)


def permutation_of(w: BraidWord) -> tuple[int, ...]:
    """0-based image of each top endpoint at the bottom (vertex-free words only)."""
    if not w.is_square:
        raise NotSquare(f"word has widths {w.top_width} -> {w.bottom_width}")
    if any(g.kind not in CROSSING_KINDS for g in w.letters):
        raise HasVertices("permutation_of needs a word without vertex letters")
    pos = list(range(w.top_width))  # pos[k] = strand currently at column k
    for g in w.letters:
        i = g.index - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    image = [0] * w.top_width
    for col, strand in enumerate(pos):
        image[strand] = col
    return tuple(image)


def cycle_count(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for k in range(len(perm)):
        if not seen[k]:
            cycles += 1
            while not seen[k]:
                seen[k] = True
                k = perm[k]
    return cycles
