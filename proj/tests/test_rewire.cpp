#include <doctest.h>

#include "oracles.hpp"
#include "twofactor/instances.hpp"
#include "twofactor/rewire.hpp"

using namespace twofactor;

namespace {

// Naive reading of the predicate.
bool naive_independent_dominating(const Graph& g, const CycleCover& c, const std::vector<Vertex>& s) {
    const auto host = oracle::adjacency_set(g);
    const auto on = oracle::cycle_edges(c);
    const std::set<Vertex> in(s.begin(), s.end());
    for (const Vertex a : s)
        for (const Vertex b : s)
            if (on.count(oracle::norm(a, b))) return false;
    for (const Vertex v : s)
        for (const Vertex x : {c.predecessor(v), c.successor(v)}) {
            bool hit = false;
            for (const Vertex t : s) hit = hit || (oracle::adjacent(host, x, t) && !on.count(oracle::norm(x, t)));
            if (!hit) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("predicate examples") {
    const auto k4 = Graph::complete(4);
    const auto c4 = CycleCover::hamilton({0, 1, 2, 3});
    CHECK(check_independent_dominating(k4, c4, std::vector<Vertex>{}));
    CHECK_FALSE(check_independent_dominating(k4, c4, std::vector<Vertex>{0}));
    const auto k5 = Graph::complete(5);
    const auto c5 = CycleCover::hamilton({0, 1, 2, 3, 4});
    CHECK_FALSE(check_independent_dominating(k5, c5, std::vector<Vertex>{0}));
    const std::vector<Vertex> s{0, 2};
    CHECK(check_independent_dominating(k5, c5, s) == naive_independent_dominating(k5, c5, s));
    CHECK_THROWS_AS(check_independent_dominating(k5, c5, std::vector<Vertex>{7}), PreconditionError);
}

TEST_CASE("predicate matches its naive reading") {
    auto rng = make_rng(29);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 5 + uniform_below(rng, 10);
        const auto inst = gen_planted(n, 0.5, rng());
        std::vector<Vertex> s;
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
            if (bernoulli(rng, 0.3)) s.push_back(v);
        CHECK(check_independent_dominating(inst.graph, inst.cover, s) ==
              naive_independent_dominating(inst.graph, inst.cover, s));
    }
}

TEST_CASE("K4 second Hamilton cycle") {
    const auto k4 = Graph::complete(4);
    const auto c = CycleCover::hamilton({0, 1, 2, 3});
    RewireRequest req{&k4, &c, {{0, 1}}, &k4, {}};
    auto rng = make_rng(1);
    const auto r = second_hamilton_cycle(req, Params{}, rng);
    REQUIRE(r);
    CHECK(oracle::cycle_edges(r->cycle) == std::set<Edge>{{0, 1}, {1, 3}, {2, 3}, {0, 2}});
}

TEST_CASE("nothing desirable off the cycle") {
    const auto k5 = Graph::complete(5);
    const auto c = CycleCover::hamilton({0, 1, 2, 3, 4});
    const auto only_cycle = Graph::cycle(5);
    RewireRequest req{&k5, &c, {}, &only_cycle, {}};
    auto rng = make_rng(1);
    std::string why;
    CHECK_FALSE(second_hamilton_cycle(req, Params{}, rng, &why));
    CHECK(why == "no desirable edge off the cycle");
}

TEST_CASE("request preconditions") {
    const auto k5 = Graph::complete(5);
    const auto c = CycleCover::hamilton({0, 1, 2, 3, 4});
    auto rng = make_rng(1);
    RewireRequest off{&k5, &c, {{0, 2}}, &k5, {}};
    CHECK_THROWS_AS(second_hamilton_cycle(off, Params{}, rng), PreconditionError);
    RewireRequest all{&k5, &c, {{0, 1}, {2, 3}}, &k5, {4}};
    CHECK_THROWS_AS(second_hamilton_cycle(all, Params{}, rng), PreconditionError);
    Params strict;
    strict.relax_degree_bound = false;
    RewireRequest ok{&k5, &c, {}, &k5, {}};
    CHECK_THROWS_AS(second_hamilton_cycle(ok, strict, rng), PreconditionError);
}

TEST_CASE("sampled switch sets satisfy the predicate and are seeded") {
    const auto inst = gen_planted(200, 0.3, 4);
    auto a = make_rng(9), b = make_rng(9);
    const auto s1 = sample_switch_set(inst.graph, inst.cover, std::vector<Vertex>{}, Params{}, a);
    const auto s2 = sample_switch_set(inst.graph, inst.cover, std::vector<Vertex>{}, Params{}, b);
    REQUIRE(s1);
    CHECK(s1 == s2);
    CHECK(check_independent_dominating(inst.graph, inst.cover, *s1));
    const auto c = CycleCover::hamilton({0, 1, 2, 3});
    const std::vector<Vertex> everything{0, 2};
    CHECK_FALSE(sample_switch_set(Graph::complete(4), c, everything, Params{}, a));
}

TEST_CASE("second Hamilton cycle contract on a dense graph") {
    const auto inst = gen_planted(120, 0.3, 12);
    const auto& g = inst.graph;
    const auto& c = inst.cover;
    const std::vector<Edge> keep{c.cover_edge(0, 0), c.cover_edge(0, 50)};
    RewireRequest req{&g, &c, keep, &g, {}};
    auto rng = make_rng(2);
    const auto r = second_hamilton_cycle(req, Params::for_graph(g), rng);
    REQUIRE(r);
    CHECK(validate_cover(g, r->cycle) == 1);
    CHECK(r->cycle.edge_set() != c.edge_set());
    for (const auto& e : keep) CHECK(r->cycle.has_edge(e.u, e.v));
    const std::set<Vertex> s(r->switch_set.begin(), r->switch_set.end());
    for (const auto& e : c.edge_list())
        if (!s.count(e.u) && !s.count(e.v)) CHECK(r->cycle.has_edge(e.u, e.v));
}
