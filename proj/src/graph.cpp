#include "twofactor/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace twofactor {

namespace {

std::uint64_t edge_key(const Edge& e) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.u)) << 32) |
           static_cast<std::uint32_t>(e.v);
}

// Splits a line into whitespace-separated unsigned integers.
bool parse_numbers(std::string_view line, std::vector<std::uint64_t>& out) {
    out.clear();
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i == line.size()) break;
        std::uint64_t value = 0;
        const auto* first = line.data() + i;
        const auto* last = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) return false;
        if (ptr != last && *ptr != ' ' && *ptr != '\t' && *ptr != '\r') return false;
        out.push_back(value);
        i = static_cast<std::size_t>(ptr - line.data());
    }
    return true;
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ > static_cast<std::size_t>(std::numeric_limits<Vertex>::max())) {
        throw GraphError("vertex count too large");
    }
    std::vector<std::size_t> degree(n_, 0);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    for (auto& e : edges_) {
        if (!contains(e.u) || !contains(e.v)) {
            throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") has a vertex outside [0," + std::to_string(n_) + ")");
        }
        if (e.u == e.v) throw GraphError("loop at vertex " + std::to_string(e.u));
        e = make_edge(e.u, e.v);
        if (!seen.insert(edge_key(e)).second) {
            throw GraphError("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ")");
        }
        ++degree[static_cast<std::size_t>(e.u)];
        ++degree[static_cast<std::size_t>(e.v)];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    adj_.assign(offsets_[n_], 0);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adj_[fill[static_cast<std::size_t>(e.u)]++] = e.v;
        adj_[fill[static_cast<std::size_t>(e.v)]++] = e.u;
    }
    for (std::size_t v = 0; v < n_; ++v) {
        std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
    min_degree_ = n_ == 0 ? 0 : *std::min_element(degree.begin(), degree.end());
    if (n_ <= kDenseLimit) {
        words_ = (n_ + 63) / 64;
        bits_.assign(n_ * words_, 0);
        for (const auto& e : edges_) {
            const auto u = static_cast<std::size_t>(e.u);
            const auto v = static_cast<std::size_t>(e.v);
            bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
            bits_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
        }
    }
}

Graph Graph::complete(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    return Graph(n, std::move(edges));
}

Graph Graph::cycle(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        edges.push_back(make_edge(static_cast<Vertex>(u), static_cast<Vertex>((u + 1) % n)));
    return Graph(n, std::move(edges));
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    if (!contains(a) || !contains(b) || a == b) return false;
    if (!bits_.empty()) {
        const auto row = static_cast<std::size_t>(a) * words_;
        const auto col = static_cast<std::size_t>(b);
        return (bits_[row + col / 64] >> (col % 64)) & 1U;
    }
    const auto nb = degree(a) <= degree(b) ? neighbors(a) : neighbors(b);
    const Vertex target = degree(a) <= degree(b) ? b : a;
    return std::binary_search(nb.begin(), nb.end(), target);
}

std::size_t Graph::common_neighbor_count(Vertex a, Vertex b) const {
    if (!bits_.empty()) {
        const auto* ra = bits_.data() + static_cast<std::size_t>(a) * words_;
        const auto* rb = bits_.data() + static_cast<std::size_t>(b) * words_;
        std::size_t count = 0;
        for (std::size_t w = 0; w < words_; ++w) count += static_cast<std::size_t>(std::popcount(ra[w] & rb[w]));
        return count;
    }
    const auto na = neighbors(a);
    const auto nb = neighbors(b);
    std::size_t count = 0;
    auto i = na.begin();
    auto j = nb.begin();
    while (i != na.end() && j != nb.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

Graph parse_graph(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::vector<std::uint64_t> nums;
    auto next_line = [&](std::string_view& line) {
        if (pos >= text.size()) return false;
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        return true;
    };

    std::string_view line;
    if (!next_line(line)) throw ParseError(1, "missing header \"n m\"");
    if (!parse_numbers(line, nums) || nums.size() != 2) {
        throw ParseError(line_no, "expected header \"n m\"");
    }
    const auto n = nums[0];
    const auto m = nums[1];
    if (n > static_cast<std::uint64_t>(std::numeric_limits<Vertex>::max())) {
        throw ParseError(line_no, "vertex count too large");
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1U << 24)));
    std::unordered_set<std::uint64_t> seen;
    while (edges.size() < m) {
        if (!next_line(line)) {
            throw ParseError(line_no + 1, "expected " + std::to_string(m) + " edges, found " +
                                              std::to_string(edges.size()));
        }
        if (!parse_numbers(line, nums) || nums.size() != 2) {
            throw ParseError(line_no, "expected edge \"u v\"");
        }
        if (nums[0] >= n || nums[1] >= n) {
            throw ParseError(line_no, "vertex id out of range [0," + std::to_string(n) + ")");
        }
        if (nums[0] == nums[1]) throw ParseError(line_no, "loop at vertex " + std::to_string(nums[0]));
        const Edge e = make_edge(static_cast<Vertex>(nums[0]), static_cast<Vertex>(nums[1]));
        if (!seen.insert(edge_key(e)).second) {
            throw ParseError(line_no, "duplicate edge (" + std::to_string(e.u) + "," +
                                          std::to_string(e.v) + ")");
        }
        edges.push_back(e);
    }
    while (next_line(line)) {
        if (!parse_numbers(line, nums)) throw ParseError(line_no, "unexpected content");
        if (!nums.empty()) throw ParseError(line_no, "more than " + std::to_string(m) + " edges");
    }
    return Graph(static_cast<std::size_t>(n), std::move(edges));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Graph load_graph(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

std::string format_graph(const Graph& g) {
    std::string out;
    out.reserve(16 + g.size() * 12);
    out += std::to_string(g.order());
    out += ' ';
    out += std::to_string(g.size());
    out += '\n';
    for (const auto& e : g.edges()) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
    write_text_file(path, format_graph(g));
}

std::vector<Vertex> common_neighborhood(const Graph& g, std::span<const Vertex> set) {
    if (set.empty()) throw PreconditionError("common_neighborhood: empty vertex set");
    for (const auto v : set) {
        if (!g.contains(v)) throw PreconditionError("common_neighborhood: vertex out of range");
    }
    auto first = g.neighbors(set[0]);
    std::vector<Vertex> acc(first.begin(), first.end());
    std::vector<Vertex> next;
    for (std::size_t i = 1; i < set.size() && !acc.empty(); ++i) {
        const auto nb = g.neighbors(set[i]);
        next.clear();
        std::set_intersection(acc.begin(), acc.end(), nb.begin(), nb.end(),
                              std::back_inserter(next));
        acc.swap(next);
    }
    return acc;
}

Graph with_edges(const Graph& g, std::span<const Edge> extra) {
    std::vector<Edge> edges = g.edges();
    EdgeSet added;
    for (const auto& raw : extra) {
        const Edge e = make_edge(raw.u, raw.v);
        if (!g.has_edge(e.u, e.v) && added.insert(e).second) edges.push_back(e);
    }
    return Graph(g.order(), std::move(edges));
}

}  // namespace twofactor
