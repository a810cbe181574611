#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twofactor/cycle_cover.hpp"
#include "twofactor/embedder.hpp"
#include "twofactor/graph.hpp"
#include "twofactor/params.hpp"
#include "twofactor/random.hpp"
#include "twofactor/switching.hpp"

namespace twofactor {

/// Bookkeeping for joining the cycles of a cover into one Hamilton cycle.
/// `removed` holds one cover edge per joint and cycle side, `added` the bridges
/// that replace them.
struct MergeRecord {
    std::vector<Edge> removed;
    std::vector<Edge> added;
    std::vector<Edge> added_new_to_graph;
    std::vector<Vertex> touched;
    std::size_t original_components = 1;
};

struct MergeResult {
    Graph augmented;
    CycleCover hamilton;
    MergeRecord record;
    // Hamilton-cycle edges incident to a touched vertex; enrichment must keep them.
    std::vector<Edge> protected_edges;
};

/// Chains cycle i to cycle i+1 by dropping one edge from each and adding two
/// bridges. Each cycle gives up its edges of largest endpoint-degree sum
/// (lexicographically first on ties), or random ones when `rng` is given.
MergeResult merge_cover(const Graph& g, const CycleCover& cover, Rng* rng = nullptr);

/// cycle minus the bridges plus the removed edges. Throws PreconditionError if
/// a bridge is not on `cycle`.
CycleCover unmerge(const CycleCover& cycle, const MergeRecord& record);

struct SolveReport {
    std::optional<CycleCover> cover;
    std::size_t initial_components = 0;
    std::size_t target = 0;
    // "unchanged", "direct" or "pipeline".
    std::string route;
    std::optional<MergeRecord> merge;
    std::optional<EnrichReport> enrichment;
    std::size_t h_after_unmerge = 0;
    bool unmerge_audit_ok = true;
    std::size_t components_after_unmerge = 0;
    // Cover the final split started from (the input, or the unmerged cycle).
    std::optional<CycleCover> split_from;
    std::vector<SwitchPlan> switch_log;
    std::string diagnostic;
};

/// A 2-factor with exactly k cycles. Tries splitting directly first unless
/// `strict`; otherwise merges into a Hamilton cycle, enriches it, undoes the
/// merge and splits. Throws PreconditionError if the cover is invalid, has
/// more than k cycles, or 3k > n.
SolveReport solve(const Graph& g, const CycleCover& cover, std::size_t k, const Params& params, Rng& rng,
                  bool strict = false);

}  // namespace twofactor
