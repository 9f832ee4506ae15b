import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempcc.core import Setting, is_proper, is_simple
from tempcc.errors import KTooSmall, NotInherentModulator
from tempcc.generators import gen_random, gen_single_snapshot
from tempcc.graphs import DiGraph, Graph, max_clique
from tempcc.kernel import (
    BLUE,
    REDUCED,
    TRIVIAL_NO,
    TRIVIAL_YES,
    WHITE,
    CliqueInstance,
    clique_to_open_tcc,
    compress_addition_only,
    kernelize,
    kernelize_addition,
    kernelize_digraph,
    mutual_graph,
    parse_clique_instance,
    replay_trace,
)
from tempcc.opentcc import max_bidirectional_clique_bruteforce
from tempcc.reachability import reachability_graph
from tempcc.transitivity import arc_addition_set, min_arc_modification_set, transitive_closure

from oracles import brute_max_clique, brute_max_mutual
from strategies import random_undirected

STRICT_D = Setting(True, True)


def _clique_answer(inst):
    return brute_max_clique(inst.graph.n, inst.graph.edges) >= inst.k


def _check_bounds(inst, trace, nb):
    assert len(inst.blue) <= nb
    assert len(inst.clusters) <= nb
    assert all(len(c) <= nb + 1 for c in inst.clusters)
    assert inst.graph.n <= nb * nb + 2 * nb


def test_trivial_shapes():
    tg = gen_single_snapshot(Graph.complete(4))
    inst, trace = kernelize(tg, Setting(True, False), 3, [])
    assert trace.status == TRIVIAL_YES and inst.graph == Graph(0) and inst.k == 0
    assert _clique_answer(inst)
    inst, trace = kernelize(tg, Setting(True, False), 5, [])
    assert trace.status == TRIVIAL_NO and inst.graph == Graph(0) and inst.k == 1
    assert not _clique_answer(inst)


def test_transitive_graph_with_empty_set_is_decided():
    rng = random.Random(12)
    for _ in range(40):
        dg = transitive_closure(DiGraph(7, frozenset((u, v) for u in range(7) for v in range(7) if u != v and rng.random() < 0.2)))
        for k in range(1, 9):
            inst, trace = kernelize_digraph(dg, k, [])
            assert trace.status in (TRIVIAL_YES, TRIVIAL_NO)
            assert _clique_answer(inst) == (brute_max_mutual(7, dg.arcs) >= k)


def test_rejects_non_modulator():
    dg = DiGraph(3, frozenset({(0, 1), (1, 2)}))
    with pytest.raises(NotInherentModulator) as info:
        kernelize_digraph(dg, 2, [])
    assert info.value.witness == (0, 1, 2)


def test_rejects_modulator_that_is_not_inherent():
    # 0 <-> 1, and blue 2 <-> 0 only: removing 2 leaves a transitive graph,
    # but the white twins 0 and 1 are told apart by 2
    arcs = {(0, 1), (1, 0), (2, 0), (0, 2)}
    with pytest.raises(NotInherentModulator) as info:
        kernelize_digraph(DiGraph(3, frozenset(arcs)), 2, [2])
    assert "twins" in str(info.value)
    # blue 2 adjacent to two separate white clusters {0} and {1}
    arcs = {(2, 0), (0, 2), (2, 1), (1, 2)}
    with pytest.raises(NotInherentModulator) as info:
        kernelize_digraph(DiGraph(3, frozenset(arcs)), 2, [2])
    assert "cluster" in str(info.value)


def test_bad_arguments():
    with pytest.raises(ValueError):
        kernelize_digraph(DiGraph(2), 0, [])
    with pytest.raises(ValueError):
        kernelize_digraph(DiGraph(2), 1, [5])


def test_random_directed_equivalence_and_bounds():
    rng = random.Random(30)
    reduced = 0
    for _ in range(150):
        tg = gen_random(rng.randint(2, 10), rng.randint(1, 4), rng.choice([0.1, 0.2, 0.35]), True, rng.getrandbits(32))
        dg = reachability_graph(tg, STRICT_D)
        B = arc_addition_set(dg).endpoints
        best = brute_max_mutual(tg.n, dg.arcs)
        for k in range(1, tg.n + 2):
            inst, trace = kernelize(tg, STRICT_D, k, B)
            assert _clique_answer(inst) == (best >= k)
            _check_bounds(inst, trace, len(B))
            assert replay_trace(dg, trace) == inst
            reduced += trace.status == REDUCED
    assert reduced > 50


def test_modification_endpoints_are_accepted():
    rng = random.Random(31)
    for _ in range(60):
        tg = gen_random(rng.randint(2, 6), 3, 0.25, True, rng.getrandbits(32))
        dg = reachability_graph(tg, STRICT_D)
        m = min_arc_modification_set(dg, 4)
        if m is None:
            continue
        best = brute_max_mutual(dg.n, dg.arcs)
        for k in range(1, dg.n + 1):
            inst, trace = kernelize_digraph(dg, k, m.endpoints)
            assert _clique_answer(inst) == (best >= k)
            _check_bounds(inst, trace, len(m.endpoints))


def test_rule_steps_are_justified_when_replayed():
    rng = random.Random(5)
    for _ in range(60):
        tg = gen_random(rng.randint(3, 9), 3, 0.3, True, rng.getrandbits(32))
        dg = reachability_graph(tg, STRICT_D)
        B = arc_addition_set(dg).endpoints
        hat = mutual_graph(dg)
        for k in range(2, tg.n + 1):
            _, trace = kernelize_digraph(dg, k, B)
            alive, kp = set(range(dg.n)), k
            for step in trace.steps:
                if step.rule == "RR1":
                    (v,) = step.vertices
                    assert len(set(hat.neighbors(v)) & alive) < kp - 1
                elif step.rule == "RR3":
                    assert kp > len(B) + 1
                    white = sorted(alive - set(B))
                    assert sorted(step.vertices) == sorted(max(c) for c in hat.components(white))
                    kp -= 1
                    assert step.k_after == kp
                elif step.rule == "RR2":
                    (v,) = step.vertices
                    assert v not in B and len(set(hat.neighbors(v)) & (alive - set(B))) >= kp - 1
                alive -= set(step.vertices) if step.rule != "RR2" else set()


def test_origin_map_points_to_original_vertices():
    rng = random.Random(6)
    for _ in range(40):
        tg = gen_random(9, 3, 0.2, True, rng.getrandbits(32))
        dg = reachability_graph(tg, STRICT_D)
        B = arc_addition_set(dg).endpoints
        inst, trace = kernelize_digraph(dg, 2, B)
        if trace.status != REDUCED:
            continue
        for u, v in inst.graph.edges:
            a, b = inst.origin_map[u], inst.origin_map[v]
            assert dg.has_arc(a, b) and dg.has_arc(b, a)
        assert {inst.origin_map[v] for v in inst.blue} <= set(B)
        assert all(inst.coloring[v] == BLUE for v in inst.blue)


def test_addition_only_three_way_agreement():
    rng = random.Random(40)
    compressed = 0
    for _ in range(150):
        tg = gen_random(rng.randint(2, 10), rng.randint(1, 4), rng.choice([0.1, 0.2, 0.35]), True, rng.getrandbits(32))
        dg = reachability_graph(tg, STRICT_D)
        B = arc_addition_set(dg).endpoints
        best = brute_max_mutual(tg.n, dg.arcs)
        for k in range(1, tg.n + 2):
            mid, trace = kernelize(tg, STRICT_D, k, B)
            out, trace2 = kernelize_addition(tg, STRICT_D, k)
            assert _clique_answer(mid) == _clique_answer(out) == (best >= k)
            if trace2.status == REDUCED:
                compressed += 1
                assert out.graph.n <= 2 * len(B) + 1
                assert out == compress_addition_only(mid)
    assert compressed > 50


def test_compress_rejects_non_universal_white():
    # a white path 0 - 1 - 2 inside one component violates universality
    g = Graph(3, frozenset({(0, 1), (1, 2)}))
    inst = CliqueInstance(g, 2, (WHITE,) * 3, ((0, 1, 2),), (0, 1, 2))
    with pytest.raises(NotInherentModulator):
        compress_addition_only(inst)


def test_dimacs_roundtrip():
    rng = random.Random(50)
    for _ in range(30):
        tg = gen_random(8, 3, 0.25, True, rng.getrandbits(32))
        dg = reachability_graph(tg, STRICT_D)
        inst, _ = kernelize_digraph(dg, 2, arc_addition_set(dg).endpoints)
        assert parse_clique_instance(inst.to_dimacs()) == inst
    for k in (1, 50):
        inst, _ = kernelize_digraph(DiGraph.bidirectional_clique(4), k, [])
        assert parse_clique_instance(inst.to_dimacs()) == inst


def test_clique_to_open_tcc_examples():
    tg, k = clique_to_open_tcc(Graph.complete(5), 5)
    assert k == 5 and tg.lifetime == 5 and tg.directed
    assert tg.n == 5 + 2 * 10
    assert max_bidirectional_clique_bruteforce(reachability_graph(tg, STRICT_D), cap=32).size == 5
    c5, _ = clique_to_open_tcc(Graph.cycle(5), 5)
    assert max_bidirectional_clique_bruteforce(reachability_graph(c5, STRICT_D), cap=32).size < 5
    with pytest.raises(KTooSmall):
        clique_to_open_tcc(Graph.complete(5), 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.floats(0.2, 0.9), st.integers(0, 2**32 - 1), st.sampled_from([5, 6]))
def test_encoding_matches_clique(n, p, seed, k):
    G = random_undirected(random.Random(seed), n, p)
    tg, _ = clique_to_open_tcc(G, k)
    assert is_proper(tg) and is_simple(tg)
    for strict in (True, False):
        dg = reachability_graph(tg, Setting(strict, True))
        # mutual reachability among originals is exactly adjacency
        for u in range(n):
            for v in range(u + 1, n):
                assert (dg.has_arc(u, v) and dg.has_arc(v, u)) == G.has_edge(u, v)
        assert (len(max_clique(Graph(tg.n, frozenset((a, b) for a, b in dg.arcs if a < b and dg.has_arc(b, a))))) >= k) == (
            brute_max_clique(n, G.edges) >= k
        )


def test_pipeline_size_is_cubic_in_b():
    rng = random.Random(60)
    for _ in range(60):
        tg = gen_random(rng.randint(3, 9), 3, 0.25, True, rng.getrandbits(32))
        dg = reachability_graph(tg, STRICT_D)
        B = arc_addition_set(dg).endpoints
        nb = len(B)
        for k in range(5, tg.n + 1):
            inst, trace = kernelize_digraph(dg, k, B)
            if trace.status != REDUCED or inst.k < 5:
                continue
            enc, _ = clique_to_open_tcc(inst.graph, inst.k)
            m = len(inst.graph.edges)
            assert enc.n == inst.graph.n + 2 * m
            bound = nb * nb + 2 * nb
            assert enc.n <= bound + bound * (bound - 1)
