import io
import json
import subprocess
import sys

import pytest

from tempcc.cli import run, vertex_cover_number
from tempcc.closedtcc import is_closed_tcc
from tempcc.core import Setting, parse_temporal_graph, serialize_temporal_graph
from tempcc.generators import gen_random, gen_star
from tempcc.graphs import Graph, write_dimacs
from tempcc.kernel import parse_clique_instance
from tempcc.reachability import is_bidirectional_clique, reachability_graph
from tempcc.transitivity import find_violation

from oracles import brute_max_clique, brute_max_mutual


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def star3(tmp_path):
    path = tmp_path / "star3.tg"
    path.write_text(serialize_temporal_graph(gen_star(3)))
    return path


@pytest.fixture
def rand_directed(tmp_path):
    path = tmp_path / "rand.tg"
    path.write_text(serialize_temporal_graph(gen_random(8, 3, 0.25, True, 17)))
    return path


@pytest.fixture
def k5(tmp_path):
    path = tmp_path / "k5.dimacs"
    path.write_text(write_dimacs(Graph.complete(5)))
    return path


def test_reach_text_and_json(star3):
    code, out, _ = call("reach", star3, "--strict")
    assert code == 0 and out.startswith("dg 7\n")
    code, obj = call_json("reach", star3, "--strict")
    assert set(obj) == {"command", "input", "result", "witness", "trace"}
    assert obj["command"] == "reach"
    dg = reachability_graph(gen_star(3), Setting(True, False))
    assert sorted(map(tuple, obj["result"]["arcs"])) == dg.sorted_arcs()


def test_params_star3(star3):
    code, obj = call_json("params", star3, "--strict", "--with-vc")
    assert code == 0
    assert obj["result"]["delta_vd"] == 2 and obj["result"]["vc"] == 1
    dg = reachability_graph(gen_star(3), Setting(True, False))
    assert find_violation(dg.delete_vertices(obj["witness"]["modulator"])) is None


def test_params_unknown_am(rand_directed):
    code, obj = call_json("params", rand_directed, "--strict", "--am-budget", "0")
    assert code == 0
    if obj["result"]["delta_aa"]:
        assert obj["result"]["delta_am"] == "unknown (> 0)"


def test_tcc_open_witness_rechecked(rand_directed):
    tg = parse_temporal_graph(rand_directed.read_text())
    dg = reachability_graph(tg, Setting(False, True))
    code, obj = call_json("tcc-open", rand_directed, "-k", 2, "--non-strict")
    assert code == 0
    assert is_bidirectional_clique(dg, obj["witness"])
    assert obj["result"]["answer"] == (len(obj["witness"]) >= 2)
    code, obj2 = call_json("tcc-open", rand_directed, "-k", 2, "--non-strict", "--modulator", ",".join(map(str, range(8))))
    assert code == 0 and obj2["result"]["size"] == obj["result"]["size"]


def test_tcc_open_bad_modulator_exits_3(tmp_path):
    path = tmp_path / "p.tg"
    path.write_text("tg directed 3 2\n0 1 2\n1 2 1\n")
    code, obj = call_json("tcc-open", path, "-k", 2, "--strict", "--modulator", "")
    assert code == 3
    assert obj["error"]["type"] == "NotAModulator" and obj["error"]["triple"] == [0, 1, 2]


def test_tcc_closed(star3):
    code, out, _ = call("tcc-closed-bf", star3, "-k", 2, "--strict")
    assert code == 0 and "answer yes" in out
    code, obj = call_json("tcc-closed-bf", star3, "-k", 2, "--strict")
    assert is_closed_tcc(gen_star(3), Setting(True, False), obj["witness"])


def test_kernel_outputs_parse(rand_directed):
    code, out, _ = call("kernel", rand_directed, "-k", 3, "--strict")
    assert code == 0
    inst = parse_clique_instance(out)
    tg = parse_temporal_graph(rand_directed.read_text())
    dg = reachability_graph(tg, Setting(True, True))
    expected = brute_max_mutual(tg.n, dg.arcs) >= 3
    assert (brute_max_clique(inst.graph.n, inst.graph.edges) >= inst.k) == expected
    code, obj = call_json("kernel", rand_directed, "-k", 3, "--strict", "--addition-only")
    assert code == 0 and obj["trace"]["vertices"] <= obj["trace"]["vertex_bound"]


def test_kernel_reencode(tmp_path):
    path = tmp_path / "r.tg"
    path.write_text(serialize_temporal_graph(gen_random(10, 4, 0.2, True, 0)))
    code, obj = call_json("kernel", path, "-k", 5, "--strict", "--reencode")
    assert code == 0 and obj["result"]["status"] == "reduced" and obj["result"]["k"] >= 5
    enc = parse_temporal_graph(obj["result"]["reencoded"])
    inst = parse_clique_instance(obj["result"]["dimacs"])
    assert enc.n == inst.graph.n + 2 * len(inst.graph.edges) and enc.lifetime == 5
    code, out, _ = call("kernel", path, "-k", 5, "--strict", "--reencode")
    assert out.startswith("# k 5\ntg directed")


def test_kernel_reencode_skipped_for_small_k(tmp_path):
    path = tmp_path / "k6.tg"
    path.write_text("tg undirected 6 1\n" + "".join(f"{u} {v} 1\n" for u in range(6) for v in range(u + 1, 6)))
    code, out, _ = call("kernel", path, "-k", 6, "--strict", "--reencode")
    assert code == 0 and "reencode skipped" in out


def test_kernel_bad_modulator_exits_3(tmp_path):
    path = tmp_path / "p.tg"
    path.write_text("tg directed 3 2\n0 1 2\n1 2 1\n")
    code, _, err = call("kernel", path, "-k", 2, "--strict", "--modulator", "")
    assert code == 3 and "NotInherentModulator" in err


def test_oracle(star3):
    code, obj = call_json("oracle", star3, "--strict")
    assert code == 0 and obj["result"]["open_max"] >= obj["result"]["closed_max"] >= 1


def test_gen_commands(tmp_path, k5):
    code, out, _ = call("gen", "single-snapshot", k5)
    assert code == 0 and parse_temporal_graph(out).lifetime == 1
    code, out, _ = call("gen", "star", 3)
    assert parse_temporal_graph(out) == gen_star(3)
    code, out, _ = call("gen", "random", "--n", 6, "-L", 3, "--p", 0.3, "--seed", 5, "--directed")
    assert parse_temporal_graph(out) == gen_random(6, 3, 0.3, True, 5)
    code, obj = call_json("gen", "nokernel", k5, "--cover", "0,1,2,3", "-k", 7)
    assert code == 0 and obj["result"]["partite"] is True
    src = tmp_path / "s.tg"
    src.write_text("tg directed 2 1\n0 1 1\n")
    code, out, _ = call("gen", "closed-hard", src, "-k", 5)
    assert code == 0 and "two opposite arcs" in out and parse_temporal_graph(out).n == 7


def test_usage_errors(star3):
    assert call("reach", star3)[0] == 2
    assert call("reach", star3, "--strict", "--non-strict")[0] == 2
    assert call("bogus")[0] == 2
    assert call("reach", "/nonexistent/file.tg", "--strict")[0] == 2
    assert call("tcc-open", star3, "-k", 2, "--strict", "--modulator", "a,b")[0] == 2


def test_precondition_errors(tmp_path, k5):
    bad = tmp_path / "bad.tg"
    bad.write_text("tg undirected 2 1\n0 1 9\n")
    code, obj = call_json("reach", bad, "--strict")
    assert code == 3 and obj["error"]["type"] == "ParseError" and obj["error"]["line"] == 2
    code, obj = call_json("gen", "nokernel", k5, "--cover", "0", "-k", 7)
    assert code == 3 and obj["error"]["type"] == "NotAVertexCover"
    assert call("gen", "nokernel", k5, "--cover", "0,1,2,3", "-k", 5)[0] == 3


def test_vertex_cover_number():
    assert vertex_cover_number(Graph.complete(4), 10) == 3
    assert vertex_cover_number(Graph.cycle(5), 10) == 3
    assert vertex_cover_number(Graph.cycle(5), 2) is None
    assert vertex_cover_number(Graph(3), 0) == 0


def test_deterministic_output(rand_directed, star3):
    for argv in (
        ("params", rand_directed, "--strict", "--json"),
        ("kernel", rand_directed, "-k", 3, "--strict", "--json"),
        ("gen", "random", "--n", 7, "-L", 3, "--p", 0.4, "--seed", 11),
        ("oracle", star3, "--non-strict", "--json"),
    ):
        assert call(*argv) == call(*argv)


def test_console_entry_point(star3):
    proc = subprocess.run(
        [sys.executable, "-m", "tempcc.cli", "reach", str(star3), "--strict"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("dg 7")
