#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "twofactor/graph.hpp"

namespace twofactor {

/// Desk-scale thresholds and budgets. Each count stands in for one of the
/// asymptotic quantities of the enrichment argument; the comment names it.
struct Params {
    // Partition: intra-part pairs need this many common neighbours (n^{1-ζ}+1).
    std::size_t common_nbr_threshold = 1;
    // Witnesses needed for membership in an M-set (n^{1-ζ}).
    std::size_t mset_threshold = 1;
    // Good sets may leave this many part vertices outside their M-set (n^{1-η'}).
    std::size_t coverage_slack = 1;
    // Max number of completed good sets per part (n^{1-3η'}).
    std::size_t set_count_cap = 1;
    // Max edges in a completed good set (n^{2η'}).
    std::size_t good_set_size_cap = 1;
    // Max size of the partial (overflow) set (n^{1-6η'}).
    std::size_t overflow_cap = 1;
    // Each overflow edge must extend the covered region by this much (n^{1-2η'}).
    std::size_t growth_per_edge = 1;
    // Close graph: indices needed for u ∈ N_v, and the per-edge implanted
    // yield demanded of an overflow set once a part is saturated (n^{1-4η'}).
    std::size_t close_index_threshold = 1;
    // u ∈ N_v needs |N(u) ∩ T| at least this; 0 means floor(|T|^{1-2ζ}).
    std::size_t cover_nbr_threshold = 0;
    double zeta = 0.015;
    // Implanted-C4 count the enrichment loop aims for (n^{2-η}).
    std::size_t h_edge_target = 1;
    // Max size of the protected edge set handed to enrichment (n^{1-η}).
    std::size_t protected_cap = 64;
    // 0 means 1/sqrt(n ln n).
    double sample_probability = 0.0;
    // Skip the sqrt(n) ln^2 n + 3|B'| + 2 degree precondition (warns instead).
    bool relax_degree_bound = true;
    // Require S to dominate all of V∖B' in G'∖C, not only N_C(S).
    bool full_domination = false;
    // Partition: witness set size of the colouring step and colour arity.
    std::size_t witness_set_size = 12;
    std::size_t colour_size = 2;
    std::size_t min_colour_class = 2;

    std::size_t sample_retries = 64;
    std::size_t rewire_attempts = 8;
    std::size_t enrich_iterations = 32;
    std::size_t enumeration_cap = std::size_t{1} << 22;
    std::size_t search_node_budget = 2'000'000;
    std::size_t exhaustive_cutoff = 14;
    std::size_t partition_retries = 4;

    std::uint64_t seed = 1;

    /// Defaults scaled to g with enrichment exponent η (η' = η/10, ζ = η/60).
    static Params for_graph(const Graph& g, double eta = 0.9);

    /// Throws PreconditionError on non-positive thresholds or budgets.
    void check() const;
};

/// Applies "key = value" lines ('#' starts a comment). Unknown keys and bad
/// values raise ParseError.
void apply_params_text(Params& params, std::string_view text);
void apply_params_file(Params& params, const std::filesystem::path& path);
std::string format_params(const Params& params);

/// Names accepted by apply_params_text, in declaration order.
std::vector<std::string> param_names();

}  // namespace twofactor
