#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twofactor/cycle_cover.hpp"
#include "twofactor/graph.hpp"
#include "twofactor/params.hpp"
#include "twofactor/random.hpp"

namespace twofactor {

enum class SwitchKind { SameCycleParallel, SameCycleCrossing, CrossCycle };

const char* to_string(SwitchKind kind);

/// Change in cycle count caused by a single switch of this kind.
int component_delta(SwitchKind kind);

/// Cover edge `pos` of cycle `cycle`, oriented tail -> head along the cycle.
struct CoverEdgeRef {
    std::size_t cycle = 0;
    std::size_t pos = 0;
    Vertex tail = 0;
    Vertex head = 0;

    friend bool operator==(const CoverEdgeRef&, const CoverEdgeRef&) = default;
};

CoverEdgeRef edge_ref(const CycleCover& cover, std::size_t cycle, std::size_t pos);

/// A 4-cycle with two opposite edges on the cover and two chords off it.
/// chord_a is incident to first.tail, chord_b to first.head. Aligned means
/// tail meets tail: chords {first.tail second.tail, first.head second.head}.
struct ImplantedC4 {
    CoverEdgeRef first;
    CoverEdgeRef second;
    Edge chord_a;
    Edge chord_b;
    bool aligned = false;
    SwitchKind kind = SwitchKind::CrossCycle;

    friend bool operator==(const ImplantedC4&, const ImplantedC4&) = default;
};

/// The implanted C4 on the two given cover edges with the given chord
/// orientation, or nullopt if it is not implanted in `cover`.
std::optional<ImplantedC4> implanted_between(const Graph& g, const CycleCover& cover,
                                             CoverEdgeRef first, CoverEdgeRef second, bool aligned);

/// All implanted C4's ordered by (first edge id, second edge id, aligned),
/// truncated at `cap`. Each 4-cycle appears once, with first.id < second.id.
std::vector<ImplantedC4> enumerate_implanted(const Graph& g, const CycleCover& cover,
                                             std::size_t cap = std::size_t{1} << 22);

/// Calls `visit` for every implanted C4 in enumeration order until it returns
/// false.
void for_each_implanted(const Graph& g, const CycleCover& cover,
                        const std::function<bool(const ImplantedC4&)>& visit);

/// Number of implanted C4's, i.e. the edge count of the auxiliary graph on
/// cover edges.
std::size_t count_h_edges(const Graph& g, const CycleCover& cover);

/// Lazily evaluated auxiliary graph on cover edges (indexed by edge id).
class HGraphView {
public:
    HGraphView(const Graph& g, const CycleCover& cover);

    std::size_t degree(std::size_t edge_id) const;
    std::size_t total() const;
    /// Implanted C4's containing the cover edge, in enumeration order.
    std::vector<ImplantedC4> incident(std::size_t edge_id) const;

private:
    const Graph* g_;
    const CycleCover* cover_;
    std::vector<std::pair<std::size_t, std::size_t>> edge_pos_;
    mutable std::vector<std::size_t> degree_;
    mutable std::vector<char> known_;
    mutable std::optional<std::size_t> total_;
};

/// cover △ c4. Throws CoverError if c4 does not match the cover.
CycleCover apply_switch(const CycleCover& cover, const ImplantedC4& c4);

struct SwitchPlan {
    std::vector<ImplantedC4> switches;
    int split_case = 0;
    int predicted_delta = 0;
    std::size_t predicted_difference = 0;
};

/// Applies all switches of the plan at once (one symmetric difference).
CycleCover apply_plan(const CycleCover& cover, const SwitchPlan& plan);

struct IncreaseResult {
    CycleCover cover;
    SwitchPlan plan;
};

/// One more cycle via the cheapest configuration found: a parallel switch
/// (4 edges), two interleaved crossing switches on one cycle (8), or three
/// cross-cycle switches between two cycles forming an increasing aligned or a
/// decreasing unaligned chain (12). nullopt if none works.
std::optional<IncreaseResult> increase_by_one(const Graph& g, const CycleCover& cover,
                                              const Params& params, Rng& rng,
                                              std::string* diagnostic = nullptr);
std::optional<IncreaseResult> increase_by_one(const Graph& g, const CycleCover& cover);

struct SplitOutcome {
    std::optional<CycleCover> cover;
    std::vector<SwitchPlan> log;
    std::string diagnostic;
};

/// Repeats increase_by_one until the cover has k cycles. Throws
/// PreconditionError if k is below the current count or above n/3.
SplitOutcome split_to_k(const Graph& g, const CycleCover& cover, std::size_t k,
                        const Params& params, Rng& rng);
SplitOutcome split_to_k(const Graph& g, const CycleCover& cover, std::size_t k);

}  // namespace twofactor
