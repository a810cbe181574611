#pragma once

#include <array>
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

struct Partition {
    std::vector<std::vector<Vertex>> parts;
    std::vector<std::size_t> part_of;
};

/// Splits V(G) into parts in which every `subset_size` vertices share at
/// least params.common_nbr_threshold neighbours. Runs the randomized
/// witness-colouring construction, then repairs and merges parts greedily;
/// the result is verified exhaustively before it is returned.
Partition partition_vertices(const Graph& g, const Params& params, Rng& rng, std::size_t subset_size = 2);

/// Exhaustive check of the partition invariant.
bool partition_satisfies(const Graph& g, const Partition& partition, std::size_t threshold,
                         std::size_t subset_size = 2);

/// Vertices z forming many C4's with the edge xy: z has at least `threshold`
/// neighbours w ∉ {x,y} with yz, wx ∈ E or yw, zx ∈ E.
struct MSet {
    Edge edge;
    std::vector<Vertex> members;
    std::vector<std::size_t> witnesses;  // parallel to members
};

/// Throws PreconditionError if xy is not an edge.
MSet m_set(const Graph& g, Edge xy, std::size_t threshold);

/// Membership mask of the union of M-sets over `edges`.
std::vector<char> m_set_union(const Graph& g, std::span<const Edge> edges, std::size_t threshold);

struct CoverGraphResult {
    Graph helper;
    std::size_t neighbour_threshold = 0;
    std::size_t min_degree_on_s = 0;
    // Smallest |M(e) ∩ T| over helper edges; only filled when audited.
    std::optional<std::size_t> min_m_intersection;
};

/// Helper graph joining each v ∈ S to its neighbours u with
/// |N(u) ∩ T| >= threshold (params.cover_nbr_threshold, or |T|^{1-2ζ}).
/// Throws PreconditionError if T is empty or not inside S.
CoverGraphResult cover_graph(const Graph& g, std::span<const Vertex> s, std::span<const Vertex> t,
                             const Params& params, bool audit = false);

struct CloseGraphResult {
    Graph helper;
    std::vector<Vertex> bad;
    // Smallest number of listed edges forming a C4 with a helper edge.
    std::optional<std::size_t> min_partner_count;
};

/// Helper graph of edges vu (v ∈ S∖B) that form a C4 with edges from at
/// least params.close_index_threshold of the listed sets. B holds the
/// vertices of S outside the M-sets of at least half the sets. Throws
/// PreconditionError if the sets overlap.
CloseGraphResult close_graph(const Graph& g, std::span<const Vertex> s, const std::vector<std::vector<Edge>>& sets,
                             const Params& params, bool audit = false);

/// Number of edge pairs from `edges` that form a C4 implanted in `cycle`.
std::size_t implanted_within(const Graph& g, const CycleCover& cycle, std::span<const Edge> edges);

/// Per-part good sets: `full` are the completed sets, `partial` the one
/// being grown.
struct PartLedger {
    std::vector<std::vector<Edge>> full;
    std::vector<Edge> partial;

    std::size_t t() const noexcept { return full.size(); }
    std::size_t m() const noexcept { return partial.size(); }
};

struct GoodSetLedger {
    std::vector<PartLedger> parts;

    std::size_t sum_t() const;
    std::size_t sum_m() const;
    /// Every edge held by any part.
    std::vector<Edge> protected_edges() const;
};

/// nullopt if the ledger satisfies all bookkeeping properties for `cycle`,
/// otherwise a description of the first violation.
std::optional<std::string> ledger_violation(const Graph& g, const CycleCover& cycle, const Partition& partition,
                                            const GoodSetLedger& ledger, const Params& params);

/// Starting ledger: saturated with empty sets for parts no larger than the
/// coverage slack, then grown greedily from cycle edges outside `reserved`.
GoodSetLedger seed_ledger(const Graph& g, const CycleCover& cycle, const Partition& partition,
                          const Params& params, std::span<const Edge> reserved);

using Potential = std::array<std::size_t, 3>;  // (Σt, Σm, implanted count)

struct EnrichReport {
    CycleCover cycle;
    GoodSetLedger ledger;
    std::size_t parts = 0;
    std::size_t h_before = 0;
    std::size_t h_after = 0;
    std::size_t thomassen_calls = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    // Rounds where the ledger gave no desirable edge and every chord was used.
    std::size_t fallback_rounds = 0;
    bool target_met = false;
    std::string note;
    std::vector<Potential> potential_trace;
};

/// Improves the Hamilton cycle by repeated rewiring until it has at least
/// params.h_edge_target implanted C4's, keeping every edge of E₀. Each
/// accepted step raises (Σt, Σm, implanted count) lexicographically. Throws
/// PreconditionError if E₀ is not on the cycle or exceeds protected_cap.
EnrichReport enrich(const Graph& g, const CycleCover& cycle, std::span<const Edge> e0, const Params& params,
                    Rng& rng);

}  // namespace twofactor
