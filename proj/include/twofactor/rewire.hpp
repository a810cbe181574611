#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twofactor/cycle_cover.hpp"
#include "twofactor/graph.hpp"
#include "twofactor/params.hpp"
#include "twofactor/random.hpp"

namespace twofactor {

/// True iff S has no two vertices adjacent on the Hamilton cycle and every
/// cycle neighbour of S has an off-cycle neighbour in S. `host` supplies the
/// off-cycle edges. Throws PreconditionError if S leaves V(host) or the cover
/// is not a single cycle.
bool check_independent_dominating(const Graph& host, const CycleCover& cycle, std::span<const Vertex> s);

/// V(G) ∖ (N_C(B') ∪ B'), sorted.
std::vector<Vertex> switch_candidates(const CycleCover& cycle, std::span<const Vertex> b_prime);

/// Samples S ⊆ A, each vertex independently with probability q (doubling on
/// each retry up to 1/2), then drops vertices until S is cycle-independent and
/// dominates N_C(S) in desirable∖C. Returns S with |S| >= 2 or nullopt.
std::optional<std::vector<Vertex>> sample_switch_set(const Graph& desirable, const CycleCover& cycle,
                                                     std::span<const Vertex> b_prime, const Params& params,
                                                     Rng& rng);

struct RewireRequest {
    const Graph* host = nullptr;
    const CycleCover* cycle = nullptr;
    std::vector<Edge> protected_edges;
    const Graph* desirable = nullptr;
    std::vector<Vertex> bad;
};

struct RewireResult {
    CycleCover cycle;
    std::vector<Vertex> switch_set;
    bool exhaustive_fallback = false;
    bool degree_bound_relaxed = false;
};

/// The degree each vertex outside B' needs in the desirable graph:
/// sqrt(n) ln^2 n + 3|B'| + 2.
double rewire_degree_bound(std::size_t n, std::size_t b_prime_size);

/// B ∪ V(E), sorted.
std::vector<Vertex> bad_closure(const RewireRequest& req);

/// A Hamilton cycle of (desirable ∩ host) ∪ C that keeps every edge of C not
/// incident to S, differs from C, and so contains a desirable edge off C.
/// Searches over the ways of re-inserting each S-vertex between the fixed
/// paths of C - S.
std::optional<CycleCover> rewire_with_switch_set(const RewireRequest& req, std::span<const Vertex> s,
                                                 const Params& params, Rng& rng);

/// Second Hamilton cycle: samples S, re-inserts it, and for small graphs
/// falls back to an exhaustive search. Throws PreconditionError on B' = V,
/// protected edges outside C, or a failed degree bound unless relaxed.
std::optional<RewireResult> second_hamilton_cycle(const RewireRequest& req, const Params& params, Rng& rng,
                                                  std::string* diagnostic = nullptr);

}  // namespace twofactor
