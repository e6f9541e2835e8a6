"""The ``vtb`` command line.

Exit codes: 0 success, 64 usage error, 65 domain error (the error name goes
to standard error).  ``vtb equiv`` uses 0/1/2 for Equivalent/Refuted/Unknown.
File arguments may be ``-`` for standard input.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Callable, Sequence, TextIO

from . import __version__
from .braiding import braid_diagram
from .diagram import MorseDiagram, close, fingerprint_diagram, format_diagram, parse_diagram
from .equiv import Budget, Equivalent, Refuted, check_equiv
from .errors import VTBError, error_name
from .fingerprint import fingerprint
from .markov import MOVE_KINDS, Limits, Move, apply_move, iter_markov_neighbors, parse_move, replay
from .rewrite import RULES_BY_NAME, canonical_form, free_reduce, isotopy_moves, rule_sites
from .words import CROSSING_KINDS, SIGMA_POS, VIRT, BraidWord, Generator, format_word, parse_word, strip_comment

EXIT_USAGE = 64
EXIT_DOMAIN = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(message)


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _word_lines(text: str) -> list[BraidWord]:
    return [parse_word(line) for line in text.splitlines() if strip_comment(line).strip()]


def _one_word(text: str) -> BraidWord:
    words = _word_lines(text)
    if len(words) != 1:
        raise UsageError(f"expected exactly one word, found {len(words)}")
    return words[0]


def _is_word(text: str) -> bool:
    for line in text.splitlines():
        line = strip_comment(line).strip()
        if line:
            return line.startswith("n=")
    return False


def _word_or_diagram(text: str) -> BraidWord | MorseDiagram:
    return _one_word(text) if _is_word(text) else parse_diagram(text)


# --- subcommands --------------------------------------------------------------------

def _cmd_parse(args, out, stdin) -> int:
    for w in _word_lines(_read(args.file, stdin)):
        print(format_word(w), file=out)
    return 0


def _cmd_reduce(args, out, stdin) -> int:
    for w in _word_lines(_read(args.file, stdin)):
        print(format_word(free_reduce(w)), file=out)
    return 0


def _cmd_canon(args, out, stdin) -> int:
    for w in _word_lines(_read(args.file, stdin)):
        print(format_word(canonical_form(w)), file=out)
    return 0


def _cmd_neighbors(args, out, stdin) -> int:
    for w in _word_lines(_read(args.file, stdin)):
        if args.markov:
            pairs = [(str(m), r) for m, r in iter_markov_neighbors(w, Limits(args.max_len, args.max_width))]
        else:
            pairs = [(f"Isotopy {site}", r) for site, r in isotopy_moves(w, args.max_len)]
        for label, r in pairs:
            print(f"{label}\t{format_word(r)}", file=out)
    return 0


def _move_from_args(args, w: BraidWord) -> Move:
    kind = args.kind
    if kind not in MOVE_KINDS:
        raise UsageError(f"unknown move kind {kind!r}; choose from {', '.join(MOVE_KINDS)}")
    if kind in ("ConjugateSigma", "ConjugateVirt"):
        if args.letter:
            m = re.fullmatch(r"([sSvyl])([1-9][0-9]*)", args.letter)
            if m is None:
                raise UsageError("--letter takes a single token such as S2")
            letter = Generator(m.group(1), int(m.group(2)))
        elif args.index is not None:
            letter = Generator(VIRT if kind == "ConjugateVirt" else SIGMA_POS, args.index)
        else:
            raise UsageError(f"{kind} needs --index or --letter")
        if letter.kind not in CROSSING_KINDS:
            raise UsageError("conjugation needs a crossing letter")
        return Move(kind, letter=letter)
    if args.site is None:
        raise UsageError(f"{kind} needs --site")
    if kind == "Isotopy":
        if not args.rule or args.rule not in RULES_BY_NAME:
            raise UsageError("Isotopy needs --rule with a known relation name")
        sites = [s for s in rule_sites(w, (RULES_BY_NAME[args.rule],)) if s.position == args.site]
        pick = args.index or 1
        if not 1 <= pick <= len(sites):
            raise VTBError(f"{args.rule} has {len(sites)} sites at position {args.site}")
        return Move(kind, rule=sites[pick - 1])
    if kind == "IsotopyTo":
        raise UsageError("IsotopyTo is only used inside certificates")
    return Move(kind, site=args.site)


def _cmd_move(args, out, stdin) -> int:
    w = _one_word(_read(args.file, stdin))
    move = _move_from_args(args, w)
    print(format_word(apply_move(w, move)), file=out)
    return 0


def _cmd_fingerprint(args, out, stdin) -> int:
    obj = _word_or_diagram(_read(args.file, stdin))
    fp = fingerprint(obj) if isinstance(obj, BraidWord) else fingerprint_diagram(obj)
    print(fp, file=out)
    return 0


def _cmd_equiv(args, out, stdin) -> int:
    w1 = _one_word(_read(args.file1, stdin))
    w2 = _one_word(_read(args.file2, stdin))
    budget = Budget(args.max_len, args.max_width, args.max_states, args.max_depth)
    verdict = check_equiv(w1, w2, budget)
    if isinstance(verdict, Equivalent):
        print(f"# Equivalent, {len(verdict.path)} moves, {verdict.states_explored} states", file=out)
        for move in verdict.path:
            print(move, file=out)
        return 0
    if isinstance(verdict, Refuted):
        a, b = verdict.witness
        print("# Refuted", file=out)
        print(f"# {a}", file=out)
        print(f"# {b}", file=out)
        return 1
    print(f"# Unknown, {verdict.states_explored} states", file=out)
    return 2


def _cmd_replay(args, out, stdin) -> int:
    w = _one_word(_read(args.word, stdin))
    moves = [parse_move(line) for line in _read(args.moves, stdin).splitlines() if strip_comment(line).strip()]
    print(format_word(replay(w, moves)), file=out)
    return 0


def _cmd_close(args, out, stdin) -> int:
    print(format_diagram(close(_one_word(_read(args.file, stdin)))), file=out)
    return 0


def _cmd_braid(args, out, stdin) -> int:
    d = parse_diagram(_read(args.file, stdin))
    w, trace = braid_diagram(d)
    print(format_word(w), file=out)
    if args.trace:
        text = trace.format() + "\n"
        if args.trace == "-":
            out.write(text)
        else:
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.write(text)
    return 0


def _cmd_render(args, out, stdin) -> int:
    from .render import render

    out.write(render(_word_or_diagram(_read(args.file, stdin)), args.format))
    return 0


def _cmd_selftest(args, out, stdin) -> int:
    from .selftest import run_selftest

    return run_selftest(out)


# --- argument parsing -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vtb", description="Virtual trivalent braids and virtual STG diagrams.")
    p.add_argument("--version", action="version", version=f"vtb {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(name: str, func: Callable, help_: str, file_arg: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        if file_arg:
            sp.add_argument("file", nargs="?", default="-", help="input file, '-' for standard input")
        sp.set_defaults(func=func)
        return sp

    cmd("parse", _cmd_parse, "echo words in canonical spelling")
    cmd("reduce", _cmd_reduce, "free reduction")
    cmd("canon", _cmd_canon, "canonical form modulo the cheap relations")
    sp = cmd("neighbors", _cmd_neighbors, "one-step neighbours of each word")
    sp.add_argument("--max-len", type=int, default=16)
    sp.add_argument("--max-width", type=int, default=6)
    sp.add_argument("--markov", action="store_true", help="include the Markov moves")
    sp = cmd("move", _cmd_move, "apply one named move")
    sp.add_argument("--kind", required=True)
    sp.add_argument("--site", type=int)
    sp.add_argument("--index", type=int)
    sp.add_argument("--letter")
    sp.add_argument("--rule")
    cmd("fingerprint", _cmd_fingerprint, "closure fingerprint of a word or diagram")
    sp = cmd("equiv", _cmd_equiv, "bounded equivalence search", file_arg=False)
    sp.add_argument("file1")
    sp.add_argument("file2")
    defaults = Budget()
    sp.add_argument("--max-len", type=int, default=defaults.max_word_len)
    sp.add_argument("--max-width", type=int, default=defaults.max_width)
    sp.add_argument("--max-states", type=int, default=defaults.max_states)
    sp.add_argument("--max-depth", type=int, default=defaults.max_depth)
    sp = cmd("replay", _cmd_replay, "apply a certificate to a word", file_arg=False)
    sp.add_argument("word")
    sp.add_argument("moves")
    cmd("close", _cmd_close, "closure diagram of a square word")
    sp = cmd("braid", _cmd_braid, "braid a diagram")
    sp.add_argument("--trace", help="write the step log to this file ('-' for standard output)")
    sp = cmd("render", _cmd_render, "draw a word or diagram")
    sp.add_argument("--format", choices=("svg", "ascii"), default="svg")
    cmd("selftest", _cmd_selftest, "run the embedded golden cases", file_arg=False)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None,
        stdin: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing subcommand")
        if getattr(args, "file1", None) == "-" and getattr(args, "file2", None) == "-":
            raise UsageError("only one input can come from standard input")
        return args.func(args, out, stdin)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except VTBError as exc:
        print(f"{error_name(exc)}: {exc}", file=err)
        return EXIT_DOMAIN
    except ValueError as exc:  # e.g. a non-positive budget field
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
