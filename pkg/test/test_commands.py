#!/usr/bin/env python3
"""
End-to-end tests of the command line: exit codes, text output and the
structured format, driven through main() with files in a temp directory.
"""

import json
import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.decomp_tree import width
from core.errors import EXIT_CAP, EXIT_FALSE, EXIT_INPUT, EXIT_OK, get_error_stats
from core.generators import bidirected_complete, complete_bipartite, directed_cycle, even_cycle, random_splice_chain
from core.width2 import ladder, ordering_width
from main import main
from tools.commands import command_names
from tools.formats import (
    emit_bgraph,
    emit_digraph,
    parse_bgraph,
    parse_decomposition,
    parse_digraph,
    parse_dtd,
    parse_matching,
    parse_ordering,
    parse_tightcuts,
)


@pytest.fixture
def write(tmp_path):
    def write_file(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write_file


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_every_command_is_registered():
    assert set(command_names()) == {
        "porosity", "is-brace", "is-covered", "extendable", "tightcuts", "pmw2", "mew", "brute-pmw",
        "ladder", "mpmw2", "mdirect", "split", "cyclewidth2", "dtd2", "bicontract", "brute-cw",
    }


def test_ladder_then_pmw2(capsys, write, tmp_path):
    code, out, _ = run(capsys, "ladder", "-n", "5")
    assert code == EXIT_OK
    g, _ = parse_bgraph(out)
    assert g == ladder(5)

    path = write("l5.txt", out)
    dot_path = str(tmp_path / "l5.dot")
    code, out, _ = run(capsys, "pmw2", path, "--dot", dot_path)
    assert code == EXIT_OK
    assert out.startswith("c width 2: yes")
    assert os.path.exists(dot_path)


def test_pmw2_refutes_k44(capsys, write):
    path = write("k44.txt", emit_bgraph(complete_bipartite(4)))
    code, out, _ = run(capsys, "pmw2", path)
    assert code == EXIT_FALSE
    assert "no-degree-3-start" in out


def test_pmw2_on_a_non_brace_reports_each_brace(capsys, write):
    path = write("c6.txt", emit_bgraph(even_cycle(3)))
    code, out, _ = run(capsys, "pmw2", path)
    assert code == EXIT_OK
    assert out.startswith("c not a brace; 2 braces")


def test_porosity_and_predicates(capsys, write):
    path = write("c6.txt", emit_bgraph(even_cycle(3)))
    code, out, _ = run(capsys, "porosity", path, "--shore", "a1,b1,b2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "c porosity 1"

    assert run(capsys, "is-brace", path)[0] == EXIT_FALSE
    assert run(capsys, "is-covered", path)[0] == EXIT_OK
    assert run(capsys, "extendable", path, "-k", "1")[0] == EXIT_OK
    assert run(capsys, "extendable", path, "-k", "2")[0] == EXIT_FALSE


def test_structured_output(capsys, write):
    path = write("c6.txt", emit_bgraph(even_cycle(3)))
    code, out, _ = run(capsys, "--format", "structured", "porosity", path, "--shore", "a1,b1")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["kind"] == "report"
    assert doc["result"]["porosity"] == 2

    code, out, _ = run(capsys, "--format", "structured", "tightcuts", path)
    doc = json.loads(out)
    assert doc["kind"] == "tightcuts"
    assert doc["brace_classes"] == ["C4", "C4"]


def test_structured_input_is_accepted(capsys, write):
    code, out, _ = run(capsys, "--format", "structured", "ladder", "-n", "4")
    path = write("l4.json", out)
    assert run(capsys, "is-brace", path)[0] == EXIT_OK


def test_input_errors(capsys, write, tmp_path):
    code, _, err = run(capsys, "is-brace", str(tmp_path / "missing.txt"))
    assert code == EXIT_INPUT
    assert "cannot read" in err

    bad = write("bad.txt", "p bgraph 2 2 1\ne 3 1\n")
    code, _, err = run(capsys, "is-brace", bad)
    assert code == EXIT_INPUT
    assert "line 2, column 3" in err

    c4 = write("c4.txt", emit_bgraph(even_cycle(2)))
    assert run(capsys, "extendable", c4, "-k", "2")[0] == EXIT_INPUT
    assert get_error_stats()["total_classified"] >= 3


def test_caps_exit_with_their_own_code(capsys, write):
    path = write("c6.txt", emit_bgraph(even_cycle(3)))
    assert run(capsys, "--cap", "4", "brute-pmw", path)[0] == EXIT_CAP
    code, out, _ = run(capsys, "brute-pmw", path)
    assert code == EXIT_OK
    assert out.startswith("c pmw 2")


def test_mew(capsys, write):
    path = write("l4.txt", emit_bgraph(ladder(4)))
    code, out, _ = run(capsys, "mew", path, "--colour", "b")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "c mew 2"


def test_mpmw2(capsys, write):
    c6 = write("c6.txt", emit_bgraph(even_cycle(3)))
    code, out, _ = run(capsys, "mpmw2", c6)
    assert code == EXIT_OK
    assert out.startswith("c M-width 2: yes")

    l4 = write("l4.txt", emit_bgraph(ladder(4)))
    code, out, _ = run(capsys, "mpmw2", l4)
    assert code == EXIT_FALSE
    assert "other" in out


def test_mdirect_and_split(capsys, write):
    c6 = write("c6.txt", emit_bgraph(even_cycle(3)))
    matching = write("m.txt", "p matching 3\nm 1 1\nm 2 2\nm 3 3\n")
    code, out, _ = run(capsys, "mdirect", c6, "--matching", matching)
    assert code == EXIT_OK
    assert parse_digraph(out) == directed_cycle(3)

    triangle = write("triangle.txt", emit_digraph(directed_cycle(3)))
    code, out, _ = run(capsys, "split", triangle)
    assert code == EXIT_OK
    g, m = parse_bgraph(out)
    assert g == even_cycle(3)
    assert len(m) == 3


def test_cyclewidth2(capsys, write):
    triangle = write("triangle.txt", emit_digraph(directed_cycle(3)))
    bi_k4 = write("bik4.txt", emit_digraph(bidirected_complete(4)))
    path = write("path.txt", "p digraph 3 2\na 1 2\na 2 3\n")

    assert run(capsys, "cyclewidth2", triangle)[0] == EXIT_OK
    code, out, _ = run(capsys, "cyclewidth2", bi_k4, "--via", "minors")
    assert code == EXIT_FALSE
    assert "above-two" in out
    code, out, _ = run(capsys, "cyclewidth2", path)
    assert code == EXIT_FALSE
    assert "acyclic" in out


def test_dtd2(capsys, write):
    triangle = write("triangle.txt", emit_digraph(directed_cycle(3)))
    code, out, _ = run(capsys, "dtd2", triangle)
    assert code == EXIT_OK
    dtd = parse_dtd(out, directed_cycle(3))
    assert len(dtd.arcs) == 1

    bi_k4 = write("bik4.txt", emit_digraph(bidirected_complete(4)))
    assert run(capsys, "dtd2", bi_k4)[0] == EXIT_FALSE


def test_bicontract(capsys, write):
    c6 = write("c6.txt", emit_bgraph(even_cycle(3)))
    code, out, _ = run(capsys, "bicontract", c6, "--vertex", "b1")
    assert code == EXIT_OK
    g, _ = parse_bgraph(out)
    assert g.order == 4 and len(g.edges) == 4
    assert run(capsys, "bicontract", c6, "--vertex", "q1")[0] == EXIT_INPUT


def test_brute_cw(capsys, write):
    bi_k3 = write("bik3.txt", emit_digraph(bidirected_complete(3)))
    code, out, _ = run(capsys, "brute-cw", bi_k3)
    assert code == EXIT_OK
    assert out.strip() == "cyclewidth 2"


FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def test_fixture_files(capsys):
    c6 = os.path.join(FIXTURES, "c6_matched.txt")
    code, out, _ = run(capsys, "tightcuts", c6)
    assert code == EXIT_OK
    assert "braces C4 C4" in out

    assert run(capsys, "pmw2", os.path.join(FIXTURES, "ladder4.txt"))[0] == EXIT_OK
    assert run(capsys, "mpmw2", os.path.join(FIXTURES, "ladder4.txt"))[0] == EXIT_FALSE
    assert run(capsys, "cyclewidth2", os.path.join(FIXTURES, "triangle.txt"), "--via", "both")[0] == EXIT_OK
    code, out, _ = run(capsys, "cyclewidth2", os.path.join(FIXTURES, "bi_k4.txt"))
    assert code == EXIT_FALSE
    assert "witness" in out


def test_success_outputs_parse_back(capsys, write):
    c6_graph, l4_graph, l5_graph = even_cycle(3), ladder(4), ladder(5)
    c6 = write("c6.txt", emit_bgraph(c6_graph))
    l4 = write("l4.txt", emit_bgraph(l4_graph))
    l5 = write("l5.txt", emit_bgraph(l5_graph))

    code, out, _ = run(capsys, "pmw2", l5)
    assert code == EXIT_OK
    assert width(parse_decomposition(out, l5_graph)).width == 2

    code, out, _ = run(capsys, "pmw2", c6)
    assert code == EXIT_OK
    assert parse_tightcuts(out).brace_classes == ("C4", "C4")

    code, out, _ = run(capsys, "tightcuts", c6)
    summary = parse_tightcuts(out)
    assert summary.brace_classes == ("C4", "C4")
    assert len(summary.cuts) == 1

    code, out, _ = run(capsys, "brute-pmw", c6)
    assert width(parse_decomposition(out, c6_graph)).width == 2

    code, out, _ = run(capsys, "mpmw2", c6)
    assert code == EXIT_OK
    d = parse_decomposition(out, c6_graph)
    assert d.anchor is not None and d.anchor.is_perfect(c6_graph)

    code, out, _ = run(capsys, "porosity", c6, "--shore", "a1,b1,b2")
    assert len(parse_matching(out, c6_graph)) == 3

    for colour in ("a", "b"):
        code, out, _ = run(capsys, "mew", l4, "--colour", colour)
        ordering = parse_ordering(out, l4_graph)
        assert {v.side for v in ordering.order} == {colour}
        assert ordering_width(ordering).width == 2


def test_seed_drives_the_tight_cut_order(capsys, write):
    chain = random_splice_chain([complete_bipartite(3), even_cycle(2), complete_bipartite(3)], random.Random(3))
    path = write("chain.txt", emit_bgraph(chain))
    summaries = []
    for seed in ("1", "2"):
        code, out, _ = run(capsys, "--seed", seed, "tightcuts", path)
        assert code == EXIT_OK
        summaries.append(parse_tightcuts(out))
    assert summaries[0].brace_classes == summaries[1].brace_classes == ("C4", "K33", "K33")
    assert all(len(summary.cuts) == 2 for summary in summaries)
