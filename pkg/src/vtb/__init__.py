"""Virtual trivalent braids and well-oriented virtual spatial trivalent graph diagrams."""

from __future__ import annotations

__version__ = "0.1.0"

from .braiding import BraidingTrace, braid_diagram, braid_step, to_regular_position
from .diagram import MorseDiagram, close, fingerprint_diagram, parse_diagram, up_arcs, validate
from .equiv import Budget, Equivalent, Refuted, Unknown, check_equiv
from .errors import VTBError
from .fingerprint import Fingerprint, fingerprint
from .markov import Move, markov_neighbors, replay
from .rewrite import canonical_form, free_reduce, isotopy_neighbors, relations_table
from .words import BraidWord, format_word, identity, parse_word

__all__ = [
    "BraidWord",
    "BraidingTrace",
    "Budget",
    "Equivalent",
    "Fingerprint",
    "MorseDiagram",
    "Move",
    "Refuted",
    "Unknown",
    "VTBError",
    "braid_diagram",
    "braid_step",
    "canonical_form",
    "check_equiv",
    "close",
    "fingerprint",
    "fingerprint_diagram",
    "format_word",
    "free_reduce",
    "identity",
    "isotopy_neighbors",
    "markov_neighbors",
    "parse_diagram",
    "parse_word",
    "relations_table",
    "replay",
    "to_regular_position",
    "up_arcs",
    "validate",
]
