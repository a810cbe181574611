#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twofactor/graph.hpp"
#include "twofactor/types.hpp"

namespace twofactor {

using Cycle = std::vector<Vertex>;

/// Where a vertex sits: cycle index and position within that cycle.
struct Slot {
    std::size_t cycle = 0;
    std::size_t pos = 0;

    friend bool operator==(const Slot&, const Slot&) = default;
};

/// A 2-factor stored as cyclically ordered vertex sequences.
///
/// Cover edge `pos` of cycle `c` joins positions pos and pos+1 (mod length).
/// Edge ids number all cover edges consecutively, cycle by cycle.
class CycleCover {
public:
    CycleCover() = default;

    /// Checks structure only (partition of [0,n), lengths >= 3).
    /// Throws CoverError.
    CycleCover(std::size_t n, std::vector<Cycle> cycles);

    static CycleCover hamilton(std::vector<Vertex> order);

    std::size_t order() const noexcept { return slot_.size(); }
    std::size_t components() const noexcept { return cycles_.size(); }
    const std::vector<Cycle>& cycles() const noexcept { return cycles_; }
    const Cycle& cycle(std::size_t c) const { return cycles_[c]; }

    const Slot& slot(Vertex v) const { return slot_[static_cast<std::size_t>(v)]; }
    Vertex successor(Vertex v) const;
    Vertex predecessor(Vertex v) const;
    bool has_edge(Vertex a, Vertex b) const;

    Edge cover_edge(std::size_t c, std::size_t pos) const;
    std::size_t edge_id(std::size_t c, std::size_t pos) const { return offsets_[c] + pos; }
    std::size_t edge_count() const noexcept { return slot_.size(); }

    std::vector<Edge> edge_list() const;
    EdgeSet edge_set() const;

    friend bool operator==(const CycleCover&, const CycleCover&) = default;

private:
    void index();

    std::vector<Cycle> cycles_;
    std::vector<Slot> slot_;
    std::vector<std::size_t> offsets_;
};

/// Returns the component count if `cover` is a 2-factor of `g`; throws
/// CoverError naming the first violation otherwise.
std::size_t validate_cover(const Graph& g, const CycleCover& cover);

/// Same check on raw cycles, reporting missing / repeated vertices and short
/// cycles before any edge check.
std::size_t validate_cycles(const Graph& g, const std::vector<Cycle>& cycles);

std::vector<Cycle> parse_cycles(std::string_view text);
CycleCover parse_cover(std::string_view text, std::size_t n);
CycleCover load_cover(const std::filesystem::path& path, std::size_t n);
std::string format_cover(const CycleCover& cover);
void save_cover(const CycleCover& cover, const std::filesystem::path& path);

/// Builds a cover from a 2-regular spanning edge set on [0,n).
CycleCover cover_from_edges(std::size_t n, std::span<const Edge> edges);

/// cover minus `removed` plus `added`. Only cycles touched by `removed` are
/// retraced; retraced cycles start at their least vertex and continue
/// toward its smaller neighbour. Throws CoverError if `removed` is not in the
/// cover, `added` overlaps the cover, or the result is not 2-regular with
/// cycles of length >= 3.
CycleCover exchange_edges(const CycleCover& cover, std::span<const Edge> removed,
                          std::span<const Edge> added);

/// |E(a) △ E(b)|.
std::size_t symmetric_difference_size(const CycleCover& a, const CycleCover& b);

}  // namespace twofactor
