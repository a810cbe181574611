import json

import pytest

import twofactor as tf


def two_triangles():
    g = tf.Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (2, 4), (1, 5)])
    return g, tf.CycleCover(6, [[0, 1, 2], [3, 4, 5]])


def test_graph_basics():
    g = tf.Graph.complete(5)
    assert g.order == 5 and g.size == 10 and g.min_degree == 4
    assert g.has_edge(0, 4)
    assert g.neighbors(2) == [0, 1, 3, 4]
    assert g.common_neighbor_count(0, 1) == 3
    with pytest.raises(tf.GraphError):
        tf.Graph(3, [(0, 0)])


def test_graph_text_round_trip():
    text = "4 3\n0 1\n1 2\n2 3\n"
    g = tf.parse_graph(text)
    assert tf.format_graph(g) == text
    with pytest.raises(tf.ParseError, match="line"):
        tf.parse_graph("3 1\n0 x\n")


def test_validate_cover():
    g, cover = two_triangles()
    assert tf.validate_cover(g, cover) == 2
    bad = tf.CycleCover.hamilton([0, 1, 2, 3, 4, 5])
    with pytest.raises(tf.CoverError):
        tf.validate_cover(g, bad)


def test_implanted_count_matches_bruteforce():
    inst = tf.gen_planted(10, 0.6, seed=3)
    found = tf.enumerate_implanted(inst.graph, inst.cover)
    assert len(found) == tf.count_h_edges(inst.graph, inst.cover)
    assert len(found) == tf.count_implanted_bruteforce(inst.graph, inst.cover)
    for c4 in found:
        assert c4.kind in ("same_cycle_parallel", "same_cycle_crossing", "cross_cycle")
        assert c4.delta in (-1, 0, 1)


def test_split_on_complete_graph():
    g = tf.Graph.complete(12)
    cover = tf.CycleCover.hamilton(list(range(12)))
    out = tf.split_to_k(g, cover, 4)
    assert out is not None
    assert tf.validate_cover(g, out) == 4


def test_increase_by_one_on_chordless_cycle():
    g = tf.Graph.cycle(9)
    cover = tf.CycleCover.hamilton(list(range(9)))
    assert tf.increase_by_one(g, cover) is None


def test_solve_planted():
    inst = tf.gen_planted(60, 0.5, seed=7)
    res = tf.solve(inst.graph, inst.cover, 5, seed=2)
    assert res.success and bool(res)
    assert tf.validate_cover(inst.graph, res.cover) == 5
    stats = json.loads(res.stats_json)
    assert stats["components"] == 5
    assert stats["k"] == 5


def test_solve_is_deterministic():
    inst = tf.gen_planted(40, 0.5, seed=11)
    a = tf.solve(inst.graph, inst.cover, 4, seed=5)
    b = tf.solve(inst.graph, inst.cover, 4, seed=5)
    assert a.cover == b.cover
    assert a.stats_json == b.stats_json


def test_solve_rejects_merge():
    g, cover = two_triangles()
    with pytest.raises(tf.PreconditionError, match="merging"):
        tf.solve(g, cover, 1)


def test_params_text():
    p = tf.Params()
    p.apply("rewire_attempts = 3\nfull_domination = true\n")
    assert p.rewire_attempts == 3 and p.full_domination
    assert "rewire_attempts = 3" in str(p)
    assert "seed" in tf.param_names()
    with pytest.raises(tf.ParseError):
        p.apply("no_such_key = 1\n")
    p.rewire_attempts = 0
    with pytest.raises(tf.PreconditionError):
        p.check()


def test_generators_and_oracle():
    inst = tf.gen_cliques_matching(5, seed=0)
    assert inst.graph.order == 10
    assert tf.validate_cover(inst.graph, inst.cover) == 1
    assert json.loads(inst.spec_json)["model"]
    tb = tf.gen_triangles_biclique(2, 3, seed=1)
    assert tf.validate_cover(tb.graph, tb.cover) >= 1
    assert tf.oracle_exists_k_factor(tf.Graph.complete(9), 3)
    assert not tf.oracle_exists_k_factor(tf.Graph.cycle(9), 2)
