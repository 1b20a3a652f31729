"""CLI surface: file formats, reports, exit codes, self-tests."""

import json
import os

import pytest

from reglab import constructions as cons
from reglab.cli import (parse_rational, parse_vertex_set, read_graph_file,
                        run, write_graph_file)
from reglab.graphs import Digraph, Graph, GraphError

ALL_COMMANDS = ["construct", "density", "check-regular", "check-superregular",
                "partition", "degree-form", "reduce", "certify", "hamilton",
                "oriented-hamilton", "oriented-path", "matching", "one-factor",
                "rotation-hamilton", "expander", "rn", "shifted-walk",
                "skewed-traverse", "rebalance", "ex-number", "ramsey",
                "packing", "embed", "oracle-embed"]


@pytest.mark.parametrize("command", ALL_COMMANDS)
def test_selftest_fixture(command):
    assert run([command, "--selftest"]) == 0


def test_graph_file_roundtrip(tmp_path):
    g = cons.random_graph(9, 0.4, 2)
    path = str(tmp_path / "g.txt")
    write_graph_file(path, g)
    assert read_graph_file(path) == g
    d = cons.random_digraph(7, 0.4, 3)
    dpath = str(tmp_path / "d.txt")
    write_graph_file(dpath, d)
    assert read_graph_file(dpath) == d


def test_graph_file_rejects_duplicates(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("graph 3\n0 1\n1 0\n")
    with pytest.raises(GraphError):
        read_graph_file(str(path))


def test_rational_parsing():
    from fractions import Fraction
    assert parse_rational("1/4") == Fraction(1, 4)
    assert parse_rational("0.25") == Fraction(1, 4)
    assert parse_rational("0.45") == Fraction(9, 20)
    with pytest.raises(GraphError):
        parse_rational("abc")


def test_vertex_set_parsing():
    assert parse_vertex_set("0-3") == 0b1111
    assert parse_vertex_set("1,3-4") == 0b11010
    with pytest.raises(GraphError):
        parse_vertex_set("")


def test_reports_byte_identical(tmp_path, capsys):
    path = str(tmp_path / "g.txt")
    write_graph_file(path, cons.chvatal_extremal(8, 3))
    assert run(["certify", "--graph", path, "--kind", "chvatal"]) == 0
    first = capsys.readouterr().out
    assert run(["certify", "--graph", path, "--kind", "chvatal"]) == 0
    second = capsys.readouterr().out
    assert first == second
    report = json.loads(first)
    assert report["command"] == "certify"
    assert report["verdict"] == "fails"
    assert report["runtime_ms"] == 0  # deterministic unless --timing


def test_seeded_commands_reproducible(tmp_path, capsys):
    argv = ["construct", "random-graph", "--n", "10", "--p", "0.5",
            "--seed", "1"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first


def test_expect_mismatch_exits_one(tmp_path):
    path = str(tmp_path / "g.txt")
    write_graph_file(path, Graph.complete(4))
    assert run(["hamilton", "--graph", path, "--expect", "found"]) == 0
    assert run(["hamilton", "--graph", path, "--expect", "none"]) == 1


def test_usage_error_exits_two(tmp_path):
    assert run(["hamilton", "--graph", str(tmp_path / "missing.txt")]) == 2
    assert run(["construct", "nosuchfamily"]) == 2
    assert run(["not-a-command"]) == 2


def test_construct_writes_file(tmp_path, capsys):
    out = str(tmp_path / "h.txt")
    assert run(["construct", "haggkvist", "--m", "3", "-o", out]) == 0
    capsys.readouterr()
    g = read_graph_file(out)
    assert isinstance(g, Digraph) and g.n == 15
    assert run(["hamilton", "--graph", out, "--expect", "none"]) == 0


def test_density_verdict_is_exact_rational(tmp_path, capsys):
    path = str(tmp_path / "g.txt")
    write_graph_file(path, Graph.from_edges(4, [(0, 2), (0, 3), (1, 2)]))
    assert run(["density", "--graph", path, "--left", "0-1",
                "--right", "2-3", "--expect", "3/4"]) == 0


def test_thread_cap_env(monkeypatch, tmp_path):
    path = str(tmp_path / "g.txt")
    write_graph_file(path, Graph.complete(4))
    monkeypatch.setenv("REG_LAB_THREADS", "2")
    assert run(["hamilton", "--graph", path]) == 0
    monkeypatch.setenv("REG_LAB_THREADS", "zero")
    assert run(["hamilton", "--graph", path]) == 2
