#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twofactor/cycle_cover.hpp"
#include "twofactor/graph.hpp"
#include "twofactor/orchestrator.hpp"

namespace twofactor {

struct RunContext {
    std::uint64_t seed = 0;
    bool strict = false;
    std::optional<double> wall_seconds;
};

/// One JSON object per solve run. Keys keep a fixed order so identical runs
/// serialize to identical bytes.
std::string run_stats_json(const Graph& g, const CycleCover& input, const SolveReport& report,
                           const RunContext& context);

/// Sum of the per-move component deltas over the switch log. A move applies
/// its switches together, so this is k minus the count the split started from.
long long switch_log_delta(const SolveReport& report);

}  // namespace twofactor
