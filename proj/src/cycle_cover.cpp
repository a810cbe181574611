#include "twofactor/cycle_cover.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <map>

namespace twofactor {

namespace {

std::string edge_text(Vertex a, Vertex b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void check_structure(std::size_t n, const std::vector<Cycle>& cycles) {
    std::vector<char> seen(n, 0);
    std::size_t total = 0;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        const auto& cyc = cycles[c];
        if (cyc.size() < 3) {
            throw CoverError("cycle " + std::to_string(c) + " has length " +
                             std::to_string(cyc.size()) + " < 3");
        }
        for (const auto v : cyc) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                throw CoverError("vertex " + std::to_string(v) + " outside [0," +
                                 std::to_string(n) + ")");
            }
            if (seen[static_cast<std::size_t>(v)]) {
                throw CoverError("vertex " + std::to_string(v) + " repeated");
            }
            seen[static_cast<std::size_t>(v)] = 1;
        }
        total += cyc.size();
    }
    if (total != n) {
        for (std::size_t v = 0; v < n; ++v) {
            if (!seen[v]) throw CoverError("vertex " + std::to_string(v) + " missing");
        }
    }
}

// Walks a cycle in the neighbour table starting at `start`, heading to the
// smaller neighbour first.
Cycle trace(Vertex start, const std::vector<std::array<Vertex, 2>>& nbr,
            const std::vector<std::size_t>& local, std::vector<char>& done) {
    Cycle cyc;
    const auto& first = nbr[local[static_cast<std::size_t>(start)]];
    Vertex prev = start;
    Vertex cur = std::min(first[0], first[1]);
    cyc.push_back(start);
    done[local[static_cast<std::size_t>(start)]] = 1;
    while (cur != start) {
        const auto li = local[static_cast<std::size_t>(cur)];
        if (done[li]) throw CoverError("edge set is not a union of disjoint cycles");
        done[li] = 1;
        cyc.push_back(cur);
        const auto& nb = nbr[li];
        const Vertex next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    if (cyc.size() < 3) throw CoverError("exchange produces a cycle of length < 3");
    return cyc;
}

}  // namespace

CycleCover::CycleCover(std::size_t n, std::vector<Cycle> cycles) : cycles_(std::move(cycles)) {
    check_structure(n, cycles_);
    slot_.resize(n);
    index();
}

CycleCover CycleCover::hamilton(std::vector<Vertex> order) {
    const auto n = order.size();
    std::vector<Cycle> cycles;
    cycles.push_back(std::move(order));
    return CycleCover(n, std::move(cycles));
}

void CycleCover::index() {
    offsets_.assign(cycles_.size() + 1, 0);
    for (std::size_t c = 0; c < cycles_.size(); ++c) {
        offsets_[c + 1] = offsets_[c] + cycles_[c].size();
        for (std::size_t p = 0; p < cycles_[c].size(); ++p) {
            slot_[static_cast<std::size_t>(cycles_[c][p])] = {c, p};
        }
    }
}

Vertex CycleCover::successor(Vertex v) const {
    const auto& s = slot(v);
    const auto& cyc = cycles_[s.cycle];
    return cyc[s.pos + 1 == cyc.size() ? 0 : s.pos + 1];
}

Vertex CycleCover::predecessor(Vertex v) const {
    const auto& s = slot(v);
    const auto& cyc = cycles_[s.cycle];
    return cyc[s.pos == 0 ? cyc.size() - 1 : s.pos - 1];
}

bool CycleCover::has_edge(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= order() ||
        static_cast<std::size_t>(b) >= order() || a == b) {
        return false;
    }
    return successor(a) == b || predecessor(a) == b;
}

Edge CycleCover::cover_edge(std::size_t c, std::size_t pos) const {
    const auto& cyc = cycles_[c];
    return make_edge(cyc[pos], cyc[pos + 1 == cyc.size() ? 0 : pos + 1]);
}

std::vector<Edge> CycleCover::edge_list() const {
    std::vector<Edge> out;
    out.reserve(order());
    for (std::size_t c = 0; c < cycles_.size(); ++c)
        for (std::size_t p = 0; p < cycles_[c].size(); ++p) out.push_back(cover_edge(c, p));
    return out;
}

EdgeSet CycleCover::edge_set() const {
    const auto list = edge_list();
    return EdgeSet(list.begin(), list.end());
}

std::size_t validate_cycles(const Graph& g, const std::vector<Cycle>& cycles) {
    check_structure(g.order(), cycles);
    for (const auto& cyc : cycles) {
        for (std::size_t p = 0; p < cyc.size(); ++p) {
            const Vertex a = cyc[p];
            const Vertex b = cyc[(p + 1) % cyc.size()];
            if (!g.has_edge(a, b)) throw CoverError("edge " + edge_text(a, b) + " absent from graph");
        }
    }
    return cycles.size();
}

std::size_t validate_cover(const Graph& g, const CycleCover& cover) {
    if (cover.order() != g.order()) {
        throw CoverError("cover spans " + std::to_string(cover.order()) + " vertices, graph has " +
                         std::to_string(g.order()));
    }
    return validate_cycles(g, cover.cycles());
}

std::vector<Cycle> parse_cycles(std::string_view text) {
    std::vector<Cycle> cycles;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        Cycle cyc;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            if (i == line.size()) break;
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
            if (ec != std::errc{} || value < 0 || value > std::numeric_limits<Vertex>::max() ||
                (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
                throw ParseError(line_no, "expected vertex ids");
            }
            cyc.push_back(static_cast<Vertex>(value));
            i = static_cast<std::size_t>(ptr - line.data());
        }
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
    }
    return cycles;
}

CycleCover parse_cover(std::string_view text, std::size_t n) {
    return CycleCover(n, parse_cycles(text));
}

CycleCover load_cover(const std::filesystem::path& path, std::size_t n) {
    return parse_cover(read_text_file(path), n);
}

std::string format_cover(const CycleCover& cover) {
    std::string out;
    for (const auto& cyc : cover.cycles()) {
        for (std::size_t p = 0; p < cyc.size(); ++p) {
            if (p) out += ' ';
            out += std::to_string(cyc[p]);
        }
        out += '\n';
    }
    return out;
}

void save_cover(const CycleCover& cover, const std::filesystem::path& path) {
    write_text_file(path, format_cover(cover));
}

CycleCover cover_from_edges(std::size_t n, std::span<const Edge> edges) {
    std::vector<std::array<Vertex, 2>> nbr(n, {-1, -1});
    std::vector<std::size_t> local(n);
    for (std::size_t v = 0; v < n; ++v) local[v] = v;
    for (const auto& e : edges) {
        for (const auto& [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            if (a < 0 || static_cast<std::size_t>(a) >= n) throw CoverError("vertex out of range");
            auto& slot = nbr[static_cast<std::size_t>(a)];
            if (slot[0] < 0) {
                slot[0] = b;
            } else if (slot[1] < 0 && slot[0] != b) {
                slot[1] = b;
            } else {
                throw CoverError("vertex " + std::to_string(a) + " has degree > 2 or a repeated edge");
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (nbr[v][1] < 0) throw CoverError("vertex " + std::to_string(v) + " has degree < 2");
    }
    std::vector<char> done(n, 0);
    std::vector<Cycle> cycles;
    for (std::size_t v = 0; v < n; ++v) {
        if (!done[v]) cycles.push_back(trace(static_cast<Vertex>(v), nbr, local, done));
    }
    return CycleCover(n, std::move(cycles));
}

CycleCover exchange_edges(const CycleCover& cover, std::span<const Edge> removed,
                          std::span<const Edge> added) {
    const auto n = cover.order();
    std::vector<std::size_t> affected;
    for (const auto& e : removed) {
        if (!cover.has_edge(e.u, e.v)) {
            throw CoverError("edge " + edge_text(e.u, e.v) + " is not a cover edge");
        }
        affected.push_back(cover.slot(e.u).cycle);
    }
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

    constexpr auto kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> local(n, kNone);
    std::vector<Vertex> verts;
    for (const auto c : affected)
        for (const auto v : cover.cycle(c)) {
            local[static_cast<std::size_t>(v)] = verts.size();
            verts.push_back(v);
        }
    std::vector<std::array<Vertex, 2>> nbr(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        nbr[i] = {cover.predecessor(verts[i]), cover.successor(verts[i])};
    }
    auto drop = [&](Vertex a, Vertex b) {
        auto& nb = nbr[local[static_cast<std::size_t>(a)]];
        if (nb[0] == b) {
            nb[0] = -1;
        } else if (nb[1] == b) {
            nb[1] = -1;
        } else {
            throw CoverError("edge " + edge_text(a, b) + " removed twice");
        }
    };
    for (const auto& e : removed) {
        drop(e.u, e.v);
        drop(e.v, e.u);
    }
    auto put = [&](Vertex a, Vertex b) {
        if (a < 0 || static_cast<std::size_t>(a) >= n || local[static_cast<std::size_t>(a)] == kNone) {
            throw CoverError("added edge " + edge_text(a, b) + " leaves the exchanged cycles");
        }
        auto& nb = nbr[local[static_cast<std::size_t>(a)]];
        if (nb[0] == b || nb[1] == b) throw CoverError("added edge " + edge_text(a, b) + " already present");
        if (nb[0] < 0) {
            nb[0] = b;
        } else if (nb[1] < 0) {
            nb[1] = b;
        } else {
            throw CoverError("vertex " + std::to_string(a) + " would have degree > 2");
        }
    };
    for (const auto& e : added) {
        if (e.u == e.v) throw CoverError("added loop");
        put(e.u, e.v);
        put(e.v, e.u);
    }
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (nbr[i][0] < 0 || nbr[i][1] < 0) {
            throw CoverError("vertex " + std::to_string(verts[i]) + " would have degree < 2");
        }
    }

    std::vector<Vertex> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> done(verts.size(), 0);
    std::vector<Cycle> fresh;
    for (const auto v : sorted) {
        if (!done[local[static_cast<std::size_t>(v)]]) fresh.push_back(trace(v, nbr, local, done));
    }

    std::vector<Cycle> cycles = cover.cycles();
    std::size_t next = 0;
    for (const auto c : affected) {
        if (next < fresh.size()) {
            cycles[c] = std::move(fresh[next++]);
        } else {
            cycles[c].clear();
        }
    }
    for (; next < fresh.size(); ++next) cycles.push_back(std::move(fresh[next]));
    cycles.erase(std::remove_if(cycles.begin(), cycles.end(), [](const Cycle& c) { return c.empty(); }),
                 cycles.end());
    return CycleCover(n, std::move(cycles));
}

std::size_t symmetric_difference_size(const CycleCover& a, const CycleCover& b) {
    std::size_t common = 0;
    for (const auto& e : a.edge_list()) common += b.has_edge(e.u, e.v) ? 1 : 0;
    return a.edge_count() + b.edge_count() - 2 * common;
}

}  // namespace twofactor
