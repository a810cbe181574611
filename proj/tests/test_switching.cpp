#include <doctest.h>

#include "oracles.hpp"
#include "twofactor/instances.hpp"
#include "twofactor/switching.hpp"

using namespace twofactor;

namespace {

Graph with(std::size_t n, std::vector<Edge> base, std::initializer_list<Edge> extra) {
    base.insert(base.end(), extra);
    return Graph(n, base);
}

std::vector<Edge> ring(Vertex from, Vertex len) {
    std::vector<Edge> es;
    for (Vertex i = 0; i < len; ++i) es.push_back(make_edge(from + i, from + (i + 1) % len));
    return es;
}

std::set<std::set<Vertex>> vertex_sets(const CycleCover& c) {
    std::set<std::set<Vertex>> out;
    for (const auto& cyc : c.cycles()) out.insert(std::set<Vertex>(cyc.begin(), cyc.end()));
    return out;
}

}  // namespace

TEST_CASE("enumeration examples") {
    CHECK(enumerate_implanted(Graph::cycle(6), CycleCover::hamilton(oracle::identity_order(6))).empty());
    const auto k4 = enumerate_implanted(Graph::complete(4), CycleCover::hamilton({0, 1, 2, 3}));
    REQUIRE(k4.size() == 2);
    for (const auto& c4 : k4) CHECK(c4.kind == SwitchKind::SameCycleCrossing);
    CHECK(k4[0].first.pos == 0);
    CHECK(k4[0].second.pos == 2);
    const auto k5 = enumerate_implanted(Graph::complete(5), CycleCover::hamilton({0, 1, 2, 3, 4}));
    CHECK(k5.size() == 5);
    for (const auto& c4 : k5) CHECK(c4.kind == SwitchKind::SameCycleCrossing);
    CHECK(count_h_edges(Graph::cycle(8), CycleCover::hamilton(oracle::identity_order(8))) == 0);
}

TEST_CASE("every enumerated C4 is implanted") {
    auto rng = make_rng(23);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 6 + uniform_below(rng, 20);
        const auto cycles = oracle::random_cycles(n, 1 + uniform_below(rng, n / 3), rng);
        const auto g = oracle::graph_around(n, cycles, 0.4, rng);
        const CycleCover cover(n, cycles);
        const auto on = oracle::cycle_edges(cover);
        const auto host = oracle::adjacency_set(g);
        const auto all = enumerate_implanted(g, cover);
        CHECK(all.size() == oracle::implanted_count(g, cover));
        CHECK(count_h_edges(g, cover) == all.size());
        HGraphView h(g, cover);
        CHECK(h.total() == all.size());
        std::size_t degree_sum = 0;
        for (std::size_t id = 0; id < cover.edge_count(); ++id) degree_sum += h.degree(id);
        CHECK(degree_sum == 2 * all.size());
        for (const auto& c4 : all) {
            for (const auto& ch : {c4.chord_a, c4.chord_b}) {
                CHECK(host.count(ch));
                CHECK_FALSE(on.count(ch));
            }
            const Edge e = make_edge(c4.first.tail, c4.first.head), f = make_edge(c4.second.tail, c4.second.head);
            CHECK_FALSE(incident(e, f));
            CHECK(cover.edge_id(c4.first.cycle, c4.first.pos) < cover.edge_id(c4.second.cycle, c4.second.pos));
        }
    }
}

TEST_CASE("apply_switch on a hexagon and two triangles") {
    const auto c6 = CycleCover::hamilton(oracle::identity_order(6));
    const auto g = Graph::complete(6);
    const auto e01 = edge_ref(c6, 0, 0), e34 = edge_ref(c6, 0, 3);
    const auto par = implanted_between(g, c6, e01, e34, false);
    REQUIRE(par);
    CHECK(par->kind == SwitchKind::SameCycleParallel);
    CHECK(std::set<Edge>{par->chord_a, par->chord_b} == std::set<Edge>{{1, 3}, {0, 4}});
    const auto split = apply_switch(c6, *par);
    CHECK(vertex_sets(split) == std::set<std::set<Vertex>>{{1, 2, 3}, {0, 4, 5}});

    const auto cross = implanted_between(g, c6, e01, e34, true);
    REQUIRE(cross);
    CHECK(cross->kind == SwitchKind::SameCycleCrossing);
    const auto same = apply_switch(c6, *cross);
    CHECK(same.components() == 1);
    CHECK(oracle::cycle_edges(same) == std::set<Edge>{{0, 3}, {2, 3}, {1, 2}, {1, 4}, {4, 5}, {0, 5}});

    const CycleCover two(6, {{0, 1, 2}, {3, 4, 5}});
    const auto j = implanted_between(g, two, edge_ref(two, 0, 0), edge_ref(two, 1, 0), true);
    REQUIRE(j);
    CHECK(j->kind == SwitchKind::CrossCycle);
    CHECK(std::set<Edge>{j->chord_a, j->chord_b} == std::set<Edge>{{0, 3}, {1, 4}});
    CHECK(apply_switch(two, *j).components() == 1);

    // Unaligned chords of (0,1),(2,3) would include the cover edge (1,2).
    CHECK_FALSE(implanted_between(g, c6, edge_ref(c6, 0, 0), edge_ref(c6, 0, 2), false));
    CHECK(implanted_between(g, c6, edge_ref(c6, 0, 0), edge_ref(c6, 0, 2), true));
}

TEST_CASE("apply_switch rejects a stale C4") {
    const auto g = Graph::complete(6);
    const auto c6 = CycleCover::hamilton(oracle::identity_order(6));
    auto c4 = *implanted_between(g, c6, edge_ref(c6, 0, 0), edge_ref(c6, 0, 3), false);
    const auto after = apply_switch(c6, c4);
    CHECK_THROWS_AS(apply_switch(after, c4), CoverError);
}

TEST_CASE("increase_by_one: interleaved crossing pair on C8") {
    const auto g = with(8, ring(0, 8), {{0, 3}, {1, 4}, {2, 5}, {3, 6}});
    const auto cover = CycleCover::hamilton(oracle::identity_order(8));
    for (const auto& c4 : enumerate_implanted(g, cover)) CHECK(c4.kind != SwitchKind::SameCycleParallel);
    const auto r = increase_by_one(g, cover);
    REQUIRE(r);
    CHECK(r->plan.split_case == 2);
    CHECK(vertex_sets(r->cover) == std::set<std::set<Vertex>>{{0, 3, 6, 7}, {1, 2, 5, 4}});
    CHECK(symmetric_difference_size(cover, r->cover) == 8);
    CHECK(validate_cover(g, r->cover) == 2);
}

TEST_CASE("increase_by_one: three aligned rungs between hexagons") {
    auto es = ring(0, 6);
    const auto second = ring(6, 6);
    es.insert(es.end(), second.begin(), second.end());
    for (Vertex i = 0; i < 6; ++i) es.push_back({i, static_cast<Vertex>(i + 6)});
    const Graph g(12, es);
    const CycleCover cover(12, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}});
    const auto r = increase_by_one(g, cover);
    REQUIRE(r);
    CHECK(r->plan.split_case == 3);
    CHECK(vertex_sets(r->cover) == std::set<std::set<Vertex>>{{0, 6, 11, 5}, {1, 7, 8, 2}, {3, 9, 10, 4}});
    CHECK(symmetric_difference_size(cover, r->cover) == 12);
}

TEST_CASE("increase_by_one: decreasing unaligned rungs") {
    // Second hexagon runs backwards, so rungs pair tail with head.
    auto es = ring(0, 6);
    for (Vertex i = 0; i < 6; ++i) es.push_back(make_edge(6 + i, 6 + (i + 1) % 6));
    for (Vertex i = 0; i < 6; ++i) es.push_back({i, static_cast<Vertex>(6 + (6 - i) % 6)});
    const Graph g(12, es);
    const CycleCover cover(12, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}});
    const auto r = increase_by_one(g, cover);
    REQUIRE(r);
    CHECK(r->cover.components() == 3);
    CHECK(validate_cover(g, r->cover) == 3);
    CHECK(symmetric_difference_size(cover, r->cover) == 12);
}

TEST_CASE("increase_by_one fails on a chordless cycle") {
    const auto cover = CycleCover::hamilton(oracle::identity_order(8));
    CHECK_FALSE(increase_by_one(Graph::cycle(8), cover));
    const auto out = split_to_k(Graph::cycle(9), CycleCover::hamilton(oracle::identity_order(9)), 2);
    CHECK_FALSE(out.cover);
    CHECK_FALSE(out.diagnostic.empty());
}

TEST_CASE("split_to_k on K12 and preconditions") {
    const auto g = Graph::complete(12);
    const auto cover = CycleCover::hamilton(oracle::identity_order(12));
    const auto out = split_to_k(g, cover, 4);
    REQUIRE(out.cover);
    CHECK(validate_cover(g, *out.cover) == 4);
    CHECK(symmetric_difference_size(cover, *out.cover) <= 36);
    CHECK(split_to_k(g, cover, 1).cover == cover);
    CHECK_THROWS_AS(split_to_k(g, *out.cover, 3), PreconditionError);
    CHECK_THROWS_AS(split_to_k(g, cover, 5), PreconditionError);
}

TEST_CASE("increase_by_one postconditions on random covers") {
    auto rng = make_rng(41);
    int successes = 0;
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = 9 + uniform_below(rng, 30);
        const auto parts = 1 + uniform_below(rng, n / 3 - 1);
        const auto cycles = oracle::random_cycles(n, parts, rng);
        const auto g = oracle::graph_around(n, cycles, 0.1 + 0.4 * uniform_unit(rng), rng);
        const CycleCover cover(n, cycles);
        const auto r = increase_by_one(g, cover, Params::for_graph(g), rng);
        if (!r) continue;
        ++successes;
        const auto before = oracle::cycle_edges(cover), after = oracle::cycle_edges(r->cover);
        CHECK(oracle::is_two_factor(g, after));
        CHECK(oracle::components(n, after) == parts + 1);
        const auto diff = oracle::symmetric_difference(before, after);
        CHECK(diff == r->plan.predicted_difference);
        CHECK((diff == 4 || diff == 8 || diff == 12));
        CHECK(r->plan.predicted_delta == 1);
    }
    CHECK(successes > 50);
}

TEST_CASE("implanted count matches the quadruple scan") {
    CHECK(count_implanted_bruteforce(Graph::complete(4), CycleCover::hamilton({0, 1, 2, 3})) == 2);
    CHECK(count_implanted_bruteforce(Graph::complete(5), CycleCover::hamilton({0, 1, 2, 3, 4})) == 5);
    CHECK(count_implanted_bruteforce(Graph::cycle(10), CycleCover::hamilton(oracle::identity_order(10))) == 0);
}
