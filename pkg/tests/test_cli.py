"""The ``vtb`` command line, driven in process through :func:`vtb.cli.run`."""

from __future__ import annotations

import io

import pytest

from vtb.cli import EXIT_DOMAIN, EXIT_USAGE, run
from vtb.markov import parse_move, replay
from vtb.selftest import BRAIDING_EXAMPLE
from vtb.words import parse_word


def call(argv: list[str], stdin: str = "") -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out=out, err=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


def test_parse_echoes_canonical_spelling():
    code, out, _ = call(["parse", "-"], "n=4:  v3 y1 s2   S1 l3 v1  # example\n")
    assert (code, out) == (0, "n=4: v3 y1 s2 S1 l3 v1\n")


def test_reduce_and_canon():
    assert call(["reduce", "-"], "n=3: s1 S1 v2\n")[1] == "n=3: v2\n"
    assert call(["canon", "-"], "n=4: s3 s1\n")[1] == "n=4: s1 s3\n"


def test_fingerprint_of_identity():
    assert call(["fingerprint", "-"], "n=3:\n") == (0, "zip=0 unzip=0 loops=3 graph=\n", "")


def test_fingerprint_of_diagram_matches_word():
    word = call(["fingerprint", "-"], "n=1: l1 y1\n")[1]
    diagram = call(["fingerprint", "-"], "cupL 1 / unzip 1 / zip 1 / cap 1\n")[1]
    assert word == diagram == "zip=1 unzip=1 loops=0 graph=z0>u0,u0>z0,u0>z0\n"


def test_equiv_stabilization_prints_replayable_certificate(write):
    a, b = write("a.txt", "n=1:\n"), write("b.txt", "n=2: s1\n")
    code, out, _ = call(["equiv", a, b])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# Equivalent, 1 moves")
    moves = [parse_move(line) for line in lines[1:]]
    assert replay(parse_word("n=1:"), moves) == parse_word("n=2: s1")


def test_equiv_refuted_and_unknown_exit_codes(write):
    a = write("a.txt", "n=1:\n")
    assert call(["equiv", a, write("b.txt", "n=2:\n")])[0] == 1
    far = write("c.txt", "n=2: s1 s1 s1\n")
    code, out, _ = call(["equiv", a, far, "--max-states", "5", "--max-depth", "1"])
    assert code == 2 and out.startswith("# Unknown")


def test_replay_from_files(write):
    w = write("w.txt", "n=2: s1\n")
    moves = write("m.txt", "# certificate\nStabVirt @0\n")
    assert call(["replay", w, moves]) == (0, "n=3: v2 s1\n", "")


def test_move_subcommand():
    assert call(["move", "-", "--kind", "ThreadRight", "--site", "0"], "n=2:\n")[1] == "n=3: S2 v1 s2\n"
    assert call(["move", "-", "--kind", "ConjugateSigma", "--letter", "S1"], "n=2: v1\n")[1] == "n=2: S1 v1 s1\n"


def test_neighbors_lists_labelled_results():
    code, out, _ = call(["neighbors", "-"], "n=2: y1\n")
    assert code == 0
    assert "\tn=2: S1 y1" in out


def test_close_then_braid_round_trip():
    code, diagram, _ = call(["close", "-"], "n=2: s1 v1\n")
    assert code == 0
    code, word, _ = call(["braid", "-"], diagram)
    assert code == 0
    assert call(["fingerprint", "-"], word)[1] == call(["fingerprint", "-"], "n=2: s1 v1\n")[1]


def test_braid_trace_to_stdout():
    code, out, _ = call(["braid", "-", "--trace", "-"], BRAIDING_EXAMPLE.replace(" / ", "\n"))
    assert code == 0
    first, *trace = out.splitlines()
    assert first.startswith("n=")
    assert trace


def test_render_ascii():
    assert call(["render", "--format", "ascii", "-"], "n=2:\n") == (0, "|   |\n|   |\n", "")


def test_selftest_passes():
    code, out, _ = call(["selftest"])
    assert code == 0
    assert out.count("PASS") == 3 and "FAIL" not in out


@pytest.mark.parametrize(
    "argv, stdin",
    [
        ([], ""),
        (["frobnicate"], ""),
        (["move", "-", "--kind", "Nope", "--site", "0"], "n=2:\n"),
        (["equiv", "-", "-"], ""),
        (["equiv", "-", "-", "--max-states", "0"], ""),
        (["parse", "/nonexistent/file"], ""),
    ],
)
def test_usage_errors_exit_64(argv, stdin):
    code, _, err = call(argv, stdin)
    assert code == EXIT_USAGE
    assert err


@pytest.mark.parametrize(
    "argv, stdin, name",
    [
        (["parse", "-"], "n=2: q1\n", "SyntaxError"),
        (["parse", "-"], "n=2: s2\n", "TypingError"),
        (["close", "-"], "n=2: y1\n", "NotSquare"),
        (["braid", "-"], "cupL 1 / cap 2\n", "ArityError"),
        (["move", "-", "--kind", "UnthreadRight", "--site", "0"], "n=3: s1\n", "BadSite"),
    ],
)
def test_domain_errors_exit_65_with_error_name(argv, stdin, name):
    code, _, err = call(argv, stdin)
    assert code == EXIT_DOMAIN
    assert err.startswith(name)
