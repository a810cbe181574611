#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twofactor/types.hpp"

namespace twofactor {

/// Immutable simple undirected graph on vertices [0, n).
///
/// Neighbour lists are sorted so common neighbourhoods can be merged in
/// linear time. Graphs up to `kDenseLimit` vertices also keep a bit matrix
/// for O(1) adjacency tests. The edge list keeps insertion order so that a
/// parsed file serializes back to the same bytes.
class Graph {
public:
    static constexpr std::size_t kDenseLimit = 16384;

    Graph() = default;

    /// Throws GraphError on loops, duplicate edges or out-of-range ids.
    Graph(std::size_t n, std::vector<Edge> edges);

    static Graph complete(std::size_t n);
    static Graph cycle(std::size_t n);

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    bool contains(Vertex v) const noexcept {
        return v >= 0 && static_cast<std::size_t>(v) < n_;
    }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[static_cast<std::size_t>(v)],
                adj_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
    }

    std::size_t degree(Vertex v) const {
        return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
    }

    std::size_t min_degree() const noexcept { return min_degree_; }

    bool has_edge(Vertex a, Vertex b) const;

    /// |N(a) ∩ N(b)|.
    std::size_t common_neighbor_count(Vertex a, Vertex b) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
    std::size_t min_degree_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Parses "n m" followed by m lines "u v". Errors carry line numbers.
Graph parse_graph(std::string_view text);
Graph load_graph(const std::filesystem::path& path);
std::string format_graph(const Graph& g);
void save_graph(const Graph& g, const std::filesystem::path& path);

/// ⋂_{v ∈ set} N(v), sorted. Throws PreconditionError on an empty set.
std::vector<Vertex> common_neighborhood(const Graph& g, std::span<const Vertex> set);

/// g plus the given edges; edges already present are skipped.
Graph with_edges(const Graph& g, std::span<const Edge> extra);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace twofactor
