#include "twofactor/instances.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <numeric>

#include "twofactor/random.hpp"

namespace twofactor {

namespace {

std::vector<Vertex> relabelling(std::size_t n, std::uint64_t seed) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    if (seed != 0) {
        auto rng = make_rng(seed);
        shuffle(perm, rng);
    }
    return perm;
}

Instance relabel(std::size_t n, const std::vector<Edge>& edges, const std::vector<Cycle>& cycles,
                 std::uint64_t seed, InstanceSpec spec) {
    const auto perm = relabelling(n, seed);
    std::vector<Edge> mapped;
    mapped.reserve(edges.size());
    for (const auto& e : edges) mapped.push_back(make_edge(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]));
    std::sort(mapped.begin(), mapped.end());
    std::vector<Cycle> mc = cycles;
    for (auto& c : mc)
        for (auto& v : c) v = perm[static_cast<std::size_t>(v)];
    return {Graph(n, std::move(mapped)), CycleCover(n, std::move(mc)), std::move(spec)};
}

}  // namespace

std::string instance_spec_json(const InstanceSpec& spec) {
    nlohmann::ordered_json j;
    j["model"] = spec.model;
    j["n"] = spec.n;
    if (spec.model == "planted") j["p"] = spec.p;
    if (spec.k != 0) j["k"] = spec.k;
    if (spec.m != 0) j["m"] = spec.m;
    if (spec.q != 0) j["q"] = spec.q;
    j["seed"] = spec.seed;
    return j.dump(2) + "\n";
}

Instance gen_planted(std::size_t n, double p, std::uint64_t seed) {
    if (n < 3) throw PreconditionError("planted: n must be at least 3");
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("planted: p must lie in [0,1]");
    auto rng = make_rng(seed);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    shuffle(order, rng);
    std::vector<char> on_cycle(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = static_cast<std::size_t>(order[i]);
        const auto b = static_cast<std::size_t>(order[(i + 1) % n]);
        on_cycle[a * n + b] = on_cycle[b * n + a] = 1;
    }
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (on_cycle[u * n + v] || bernoulli(rng, p)) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    return {Graph(n, std::move(edges)), CycleCover::hamilton(std::move(order)),
            InstanceSpec{"planted", n, p, 0, 0, 0, seed}};
}

Instance gen_cliques_matching(std::size_t q, std::uint64_t seed, bool allow_even) {
    if (q < 4) throw PreconditionError("cliques-matching: q must be at least 4");
    if (q % 2 == 0 && !allow_even) throw PreconditionError("cliques-matching: q must be odd (pass the even flag to override)");
    const auto n = 2 * q;
    std::vector<Edge> edges;
    for (std::size_t base : {std::size_t{0}, q})
        for (std::size_t u = 0; u < q; ++u)
            for (std::size_t v = u + 1; v < q; ++v)
                edges.push_back({static_cast<Vertex>(base + u), static_cast<Vertex>(base + v)});
    edges.push_back({0, static_cast<Vertex>(q)});
    edges.push_back({1, static_cast<Vertex>(q + 1)});
    // 0, 2..q-1, 1, q+1, q+2..2q-1, q
    Cycle ham{0};
    for (std::size_t v = 2; v < q; ++v) ham.push_back(static_cast<Vertex>(v));
    ham.push_back(1);
    ham.push_back(static_cast<Vertex>(q + 1));
    for (std::size_t v = q + 2; v < 2 * q; ++v) ham.push_back(static_cast<Vertex>(v));
    ham.push_back(static_cast<Vertex>(q));
    return relabel(n, edges, {ham}, seed, InstanceSpec{"cliques-matching", n, 0.0, (q - 1) / 2, 0, q, seed});
}

Instance gen_triangles_biclique(std::size_t k, std::size_t m, std::uint64_t seed) {
    if (k < 2) throw PreconditionError("triangles-biclique: k must be at least 2");
    if (m < 3) throw PreconditionError("triangles-biclique: m must be at least 3");
    const auto t = 3 * (k - 1);
    const auto n = t + 2 * m;
    auto a = [&](std::size_t i) { return static_cast<Vertex>(t + i); };
    auto b = [&](std::size_t i) { return static_cast<Vertex>(t + m + i); };
    std::vector<Edge> edges;
    std::vector<Cycle> cycles;
    for (std::size_t j = 0; j + 1 < k; ++j) {
        const auto x = static_cast<Vertex>(3 * j);
        edges.push_back({x, x + 1});
        edges.push_back({x, x + 2});
        edges.push_back({x + 1, x + 2});
        cycles.push_back({x, x + 1, x + 2});
        for (Vertex v = x; v < x + 3; ++v)
            for (std::size_t i = 0; i < m; ++i) edges.push_back({v, a(i)});
    }
    Cycle bip;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) edges.push_back({a(i), b(j)});
        bip.push_back(a(i));
        bip.push_back(b(i));
    }
    cycles.push_back(std::move(bip));
    return relabel(n, edges, cycles, seed, InstanceSpec{"triangles-biclique", n, 0.0, k, m, 0, seed});
}

bool oracle_exists_k_factor(const Graph& g, std::size_t k) {
    const auto n = g.order();
    if (n > kFactorOracleCap) throw PreconditionError("oracle: n exceeds " + std::to_string(kFactorOracleCap));
    if (k == 0 || 3 * k > n) return false;
    const std::size_t full = (std::size_t{1} << n) - 1;
    // path[mask] bit v: a path from the lowest vertex of mask through all of
    // mask ending at v.
    std::vector<std::uint32_t> path(full + 1, 0);
    std::vector<char> cyclic(full + 1, 0);
    for (std::size_t v = 0; v < n; ++v) path[std::size_t{1} << v] = std::uint32_t{1} << v;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        const auto low = static_cast<std::size_t>(std::countr_zero(mask));
        for (std::size_t v = 0; v < n; ++v) {
            if (!((path[mask] >> v) & 1U)) continue;
            for (const Vertex w : g.neighbors(static_cast<Vertex>(v))) {
                const auto wb = static_cast<std::size_t>(w);
                if (wb <= low || ((mask >> wb) & 1U)) continue;
                path[mask | (std::size_t{1} << wb)] |= std::uint32_t{1} << wb;
            }
            if (std::popcount(mask) >= 3 && g.has_edge(static_cast<Vertex>(v), static_cast<Vertex>(low))) cyclic[mask] = 1;
        }
    }
    // counts[mask] bit c: mask splits into exactly c vertex-disjoint cycles.
    std::vector<std::uint32_t> counts(full + 1, 0);
    counts[0] = 1;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        const std::size_t low = mask & (~mask + 1);
        const std::size_t rest = mask ^ low;
        for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
            const std::size_t part = sub | low;
            if (cyclic[part] && counts[mask ^ part]) counts[mask] |= counts[mask ^ part] << 1;
            if (sub == 0) break;
        }
    }
    return (counts[full] >> k) & 1U;
}

std::size_t count_implanted_bruteforce(const Graph& g, const CycleCover& cover) {
    const auto n = g.order();
    if (n > kImplantedOracleCap) throw PreconditionError("implanted oracle: n exceeds " + std::to_string(kImplantedOracleCap));
    auto chord = [&](Vertex a, Vertex b) { return g.has_edge(a, b) && !cover.has_edge(a, b); };
    std::size_t walks = 0;
    const auto vn = static_cast<Vertex>(n);
    for (Vertex a = 0; a < vn; ++a)
        for (Vertex b = 0; b < vn; ++b) {
            if (b == a || !cover.has_edge(a, b)) continue;
            for (Vertex c = 0; c < vn; ++c) {
                if (c == a || c == b || !chord(b, c)) continue;
                for (Vertex d = 0; d < vn; ++d) {
                    if (d == a || d == b || d == c) continue;
                    if (cover.has_edge(c, d) && chord(d, a)) ++walks;
                }
            }
        }
    // Each implanted C4 is traced by 4 closed walks that start on a cover edge.
    return walks / 4;
}

}  // namespace twofactor
