#include <doctest.h>

#include "oracles.hpp"
#include "twofactor/cycle_cover.hpp"
#include "twofactor/graph.hpp"

using namespace twofactor;

TEST_CASE("parse triangle") {
    const auto g = parse_graph("3 3\n0 1\n1 2\n2 0\n");
    CHECK(g.order() == 3);
    CHECK(g.size() == 3);
    CHECK(g.min_degree() == 2);
    CHECK(g.has_edge(2, 0));
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const char* text) {
        try {
            parse_graph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("2 2\n0 1\n0 1\n") == 3);
    CHECK(line_of("3 1\n0 3\n") == 2);
    CHECK(line_of("3 1\n1 1\n") == 2);
    CHECK(line_of("3 x\n") == 1);
    CHECK(line_of("3 2\n0 1\n") == 3);
    CHECK(line_of("3 1\n0 1\n1 2\n") == 3);
    CHECK(line_of("3 1\n0 1 2\n") == 2);
    CHECK_THROWS_WITH_AS(parse_graph("2 2\n0 1\n0 1\n"), "line 3: duplicate edge (0,1)", ParseError);
}

TEST_CASE("hexagon and round trip") {
    const std::string text = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";
    const auto g = parse_graph(text);
    CHECK(g.min_degree() == 2);
    CHECK(format_graph(g) == text);
}

TEST_CASE("round trip is byte exact on random graphs") {
    auto rng = make_rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto g = oracle::random_graph(3 + uniform_below(rng, 20), 0.4, rng);
        const auto text = format_graph(g);
        CHECK(format_graph(parse_graph(text)) == text);
    }
}

TEST_CASE("graph construction rejects bad edges") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), GraphError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), GraphError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), GraphError);
}

TEST_CASE("common neighbourhood") {
    const auto k5 = Graph::complete(5);
    const std::vector<Vertex> s{0, 1};
    CHECK(common_neighborhood(k5, s) == std::vector<Vertex>{2, 3, 4});
    const auto c6 = Graph::cycle(6);
    const std::vector<Vertex> t{0, 2};
    CHECK(common_neighborhood(c6, t) == std::vector<Vertex>{1});
    CHECK_THROWS_AS(common_neighborhood(c6, std::vector<Vertex>{}), PreconditionError);

    auto rng = make_rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_graph(10, 0.5, rng);
        const auto a = static_cast<Vertex>(uniform_below(rng, 10));
        auto b = static_cast<Vertex>(uniform_below(rng, 9));
        if (b >= a) ++b;
        const std::vector<Vertex> pair{a, b};
        CHECK(common_neighborhood(g, pair) == oracle::common(g, a, b));
        CHECK(g.common_neighbor_count(a, b) == oracle::common(g, a, b).size());
        const std::vector<Vertex> single{a};
        const auto nb = g.neighbors(a);
        CHECK(common_neighborhood(g, single) == std::vector<Vertex>(nb.begin(), nb.end()));
    }
}

TEST_CASE("sparse adjacency path agrees with bit matrix") {
    // Above the dense limit adjacency falls back to binary search.
    const std::size_t n = Graph::kDenseLimit + 10;
    std::vector<Edge> es;
    for (Vertex v = 0; v + 1 < static_cast<Vertex>(n); ++v) es.push_back({v, v + 1});
    es.push_back({0, 5});
    es.push_back({2, 5});
    const Graph g(n, es);
    CHECK(g.has_edge(5, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.common_neighbor_count(0, 2) == 2);  // 1 and 5
}
