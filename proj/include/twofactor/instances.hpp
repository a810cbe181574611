#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "twofactor/cycle_cover.hpp"
#include "twofactor/graph.hpp"

namespace twofactor {

/// Generator parameters; fields a model does not use stay zero.
struct InstanceSpec {
    std::string model;
    std::size_t n = 0;
    double p = 0.0;
    std::size_t k = 0;
    std::size_t m = 0;
    std::size_t q = 0;
    std::uint64_t seed = 0;
};

std::string instance_spec_json(const InstanceSpec& spec);

struct Instance {
    Graph graph;
    CycleCover cover;
    InstanceSpec spec;
};

/// Hamilton cycle on a random vertex order plus every other pair with
/// probability p. The cover is the planted cycle.
Instance gen_planted(std::size_t n, double p, std::uint64_t seed);

/// Two disjoint K_q joined by two disjoint bridges, with a Hamilton cycle
/// through both bridges as the cover. q must be at least 4 and odd unless
/// `allow_even`. Seed 0 keeps the canonical labelling.
Instance gen_cliques_matching(std::size_t q, std::uint64_t seed, bool allow_even = false);

/// k-1 disjoint triangles and K_{m,m} on sides A, B, with every triangle
/// vertex joined to all of A. The cover is the triangles plus the cycle
/// a0 b0 a1 b1 ... Seed 0 keeps the canonical labelling.
Instance gen_triangles_biclique(std::size_t k, std::size_t m, std::uint64_t seed);

inline constexpr std::size_t kFactorOracleCap = 14;
inline constexpr std::size_t kImplantedOracleCap = 12;

/// Whether g has a 2-factor with exactly k cycles. Exhaustive; n <= 14.
bool oracle_exists_k_factor(const Graph& g, std::size_t k);

/// Implanted C4 count by scanning all ordered vertex quadruples; n <= 12.
std::size_t count_implanted_bruteforce(const Graph& g, const CycleCover& cover);

}  // namespace twofactor
