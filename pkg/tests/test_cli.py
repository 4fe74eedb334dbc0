import json
import logging

import pytest

from cli import run
from exact_balance import VertexFunction, is_balanced, parse_function
from graph_core import build_graph, make_complete, make_cycle, make_petal, read_graph, write_graph
from synthesis import read_block


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def cycle4(tmp_path):
    path = tmp_path / "c4.txt"
    write_graph(str(path), make_cycle(4))
    return str(path)


def run_json(capsys, argv):
    assert run(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_gen_writes_edge_list(tmp_path):
    out = tmp_path / "petal.txt"
    assert run(["gen", "petal", "2", "-o", str(out)]) == 0
    assert read_graph(str(out)) == make_petal(2)


def test_gen_prints_without_output(capsys):
    assert run(["gen", "complete", "3"]) == 0
    assert capsys.readouterr().out == "3 3\n0 1\n0 2\n1 2\n"


def test_gen_figure_eight(tmp_path):
    out = tmp_path / "eight.txt"
    assert run(["gen", "figure-eight", "3", "5", "-o", str(out)]) == 0
    assert read_graph(str(out)).vertex_count == 7


def test_gen_wrong_arity(capsys):
    assert run(["gen", "petal", "2", "3"]) == 2
    assert "error" in capsys.readouterr().err


def test_spectrum_json(tmp_path, capsys):
    path = tmp_path / "k4.txt"
    write_graph(str(path), make_complete(4))
    data = run_json(capsys, ["spectrum", "-i", str(path), "--json"])
    assert data["multiplicities"] == [1, 3]
    assert data["eigenvalues"][1] == pytest.approx(4 / 3)
    assert data["tol"] == 1e-8


def test_spectrum_text_with_tolerance(cycle4, capsys):
    assert run(["spectrum", "-i", cycle4, "--tol", "1e-6", "--eigenvectors"]) == 0
    out = capsys.readouterr().out
    assert "m1 (exact): 2" in out
    assert "bipartite: True" in out


def test_spectrum_of_graph_with_isolated_vertex(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("3 1\n0 1\n")
    assert run(["spectrum", "-i", str(path)]) == 1
    assert "isolated" in capsys.readouterr().err


def test_m1_with_basis(cycle4, tmp_path, capsys):
    basis = tmp_path / "basis.txt"
    assert run(["m1", "-i", cycle4, "--basis", str(basis)]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert basis.read_text() == "1 0 -1 0\n0 1 0 -1\n"


def test_verify(tmp_path, capsys):
    graph = tmp_path / "k3.txt"
    write_graph(str(graph), make_complete(3))
    function = tmp_path / "f.txt"
    function.write_text("1 1\n2 -1\n")
    assert run(["verify", "-i", str(graph), "-f", str(function), "--lambda", "3/2"]) == 0
    assert "ok" in capsys.readouterr().out
    assert run(["verify", "-i", str(graph), "-f", str(function), "--lambda", "1"]) == 1


def test_verify_rejects_float_lambda(tmp_path):
    graph = tmp_path / "k3.txt"
    write_graph(str(graph), make_complete(3))
    function = tmp_path / "f.txt"
    function.write_text("1 1\n")
    assert run(["verify", "-i", str(graph), "-f", str(function), "--lambda", "1.5"]) == 2


def test_missing_input_is_exit_two(tmp_path, capsys):
    assert run(["m1", "-i", str(tmp_path / "nope.txt")]) == 2
    assert "error" in capsys.readouterr().err


def test_undecodable_input_is_exit_two(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    graph.write_bytes(b"2 1\n0 1\n\xff\xfe\n")
    assert run(["m1", "-i", str(graph)]) == 2
    assert "UTF-8" in capsys.readouterr().err

    write_graph(str(graph), make_complete(3))
    function = tmp_path / "f.txt"
    function.write_bytes(b"0 1\n\xff 2\n")
    assert run(["verify", "-i", str(graph), "-f", str(function), "--lambda", "1"]) == 2
    assert "UTF-8" in capsys.readouterr().err


def test_usage_errors():
    assert run([]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["--version"]) == 0


def test_double_vertex(cycle4, tmp_path, capsys):
    out = tmp_path / "out.txt"
    fn = tmp_path / "out.fn"
    data = run_json(capsys, ["op", "double-vertex", "-i", cycle4, "--vertex", "0",
                             "-o", str(out), "--emit-function", str(fn), "--json"])
    assert data["id_map"] == {"copies": {"0": 4}}
    assert data["eigenvalue"] == "1"
    g = read_graph(str(out))
    assert is_balanced(g, parse_function(fn.read_text(), g.vertex_count))


def test_double_motif_with_eigenvalue(cycle4, tmp_path, capsys):
    out = tmp_path / "out.txt"
    data = run_json(capsys, ["op", "double-motif", "-i", cycle4, "--motif", "0,1",
                             "--values=1,-1", "--lambda", "3/2", "-o", str(out), "--json"])
    assert data["eigenvalue"] == "3/2"
    assert data["vertices"] == 6


def test_double_motif_precondition_failure(cycle4, tmp_path, capsys):
    out = tmp_path / "out.txt"
    assert run(["op", "double-motif", "-i", cycle4, "--motif", "0,1", "--values=1,1",
                "-o", str(out)]) == 1
    assert "error" in capsys.readouterr().err
    assert not out.exists()


def test_double_edge(cycle4, tmp_path, capsys):
    out = tmp_path / "out.txt"
    data = run_json(capsys, ["op", "double-edge", "-i", cycle4, "--edge", "0", "1", "-o", str(out), "--json"])
    assert [pair["exact"] for pair in data["eigenpairs"]] == ["1/2", "3/2"]


def test_double_graph(cycle4, tmp_path, capsys):
    out = tmp_path / "out.txt"
    assert run(["op", "double-graph", "-i", cycle4, "-o", str(out)]) == 0
    assert read_graph(str(out)).degrees() == [4] * 8


def test_split_and_chain(tmp_path, capsys):
    graph = tmp_path / "c4.txt"
    write_graph(str(graph), make_cycle(4))
    function = tmp_path / "f.txt"
    function.write_text("0 1\n2 -1\n")
    out = tmp_path / "split.txt"
    emitted = tmp_path / "split.fn"
    assert run(["op", "split", "-i", str(graph), "-f", str(function), "--sigma0", "0,1",
                "--sigma1", "2,3", "--side", "0-1=2", "-o", str(out), "--emit-function", str(emitted)]) == 0
    g = read_graph(str(out))
    assert g.vertex_count == 8
    assert is_balanced(g, parse_function(emitted.read_text(), 8))

    chained = tmp_path / "chain.txt"
    assert run(["op", "attach-chain2", "-i", str(graph), "-f", str(function), "--vertex", "0",
                "-o", str(chained)]) == 0
    assert read_graph(str(chained)).vertex_count == 6


def test_join_merge_connect(tmp_path, capsys):
    chain = tmp_path / "p3.txt"
    chain.write_text("3 2\n0 1\n1 2\n")
    function = tmp_path / "p3.fn"
    function.write_text("0 1\n2 -1\n")
    joined = tmp_path / "joined.txt"
    assert run(["op", "join", "-i", str(chain), "--at", "0", "--other", str(chain), "--other-at", "0",
                "-f", str(function), "--other-function", str(function), "-o", str(joined)]) == 0
    assert read_graph(str(joined)).vertex_count == 5

    union = tmp_path / "c3c5.txt"
    union.write_text("8 8\n0 1\n1 2\n0 2\n3 4\n4 5\n5 6\n6 7\n3 7\n")
    values = tmp_path / "c3c5.fn"
    values.write_text("0 1\n1 -1\n2 -1\n3 1\n4 1\n5 -1\n6 -1\n7 1\n")
    merged = tmp_path / "merged.txt"
    assert run(["op", "merge", "-i", str(union), "-f", str(values), "--pairs", "0:3", "-o", str(merged)]) == 0
    assert read_graph(str(merged)).vertex_count == 7

    edges = tmp_path / "two.txt"
    edges.write_text("4 2\n0 1\n2 3\n")
    signs = tmp_path / "two.fn"
    signs.write_text("0 1\n1 1\n2 -1\n3 -1\n")
    closed = tmp_path / "closed.txt"
    assert run(["op", "connect", "-i", str(edges), "-f", str(signs), "--pairs", "0:2,1:3", "-o", str(closed)]) == 0
    assert read_graph(str(closed)) == build_graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def test_bad_pairs_syntax(cycle4, tmp_path):
    function = tmp_path / "f.txt"
    function.write_text("0 1\n")
    assert run(["op", "merge", "-i", cycle4, "-f", str(function), "--pairs", "0-2",
                "-o", str(tmp_path / "x.txt")]) == 2


def test_synth_blocks(tmp_path, capsys):
    triangle = tmp_path / "tri.txt"
    assert run(["synth", "block", "--kind", "triangle", "--count", "2", "-o", str(triangle)]) == 0
    assert read_block(str(triangle)).pair == (1, -4)
    capsys.readouterr()
    rotated = tmp_path / "rot.txt"
    data = run_json(capsys, ["synth", "rotate", "-i", str(triangle), "-o", str(rotated), "--json"])
    assert (data["n"], data["m"]) == (4, 1)
    negated = tmp_path / "neg.txt"
    assert run(["synth", "negate", "-i", str(rotated), "-o", str(negated)]) == 0
    assert read_block(str(negated)).pair == (-4, -1)
    joined = tmp_path / "join.txt"
    assert run(["synth", "join", "-i", str(rotated), str(rotated), "-o", str(joined)]) == 0
    assert read_block(str(joined)).pair == (4, 2)


def test_synth_realize(tmp_path, capsys):
    out = tmp_path / "b.txt"
    assert run(["synth", "realize", "3", "-2", "-o", str(out)]) == 0
    assert read_block(str(out)).pair == (3, -2)
    capsys.readouterr()
    assert run(["synth", "realize", "3", "5", "-o", str(out)]) == 1
    assert "odd" in capsys.readouterr().err


def test_synth_embed(tmp_path):
    sigma = tmp_path / "sigma.txt"
    sigma.write_text("2 1\n0 1\n")
    function = tmp_path / "f.txt"
    function.write_text("0 1\n1 1\n")
    out = tmp_path / "embedded.txt"
    assert run(["synth", "embed", "-i", str(sigma), "-f", str(function), "-o", str(out)]) == 0
    g = read_graph(str(out))
    f = parse_function((tmp_path / "embedded.txt.fn").read_text(), g.vertex_count)
    assert is_balanced(g, f)
    assert f.restricted([0, 1]) == VertexFunction((1, 1))


def test_count(tmp_path, capsys):
    graph = tmp_path / "k4.txt"
    write_graph(str(graph), make_complete(4))
    pattern = tmp_path / "p3.txt"
    pattern.write_text("3 2\n0 1\n1 2\n")
    data = run_json(capsys, ["count", "-i", str(graph), "--pattern", str(pattern), "--json"])
    assert data == {"count": 12, "induced": 0}


def test_verbose_logging(cycle4, capsys):
    assert run(["-v", "m1", "-i", cycle4]) == 0
    assert "adjacency kernel" in capsys.readouterr().err
