#include "twofactor/embedder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "twofactor/rewire.hpp"
#include "twofactor/switching.hpp"

namespace twofactor {

namespace {

// Pairwise common-neighbour counts, tabulated when n is small enough.
class CommonCounts {
public:
    explicit CommonCounts(const Graph& g) : g_(g) {
        const auto n = g.order();
        if (n <= kTableLimit) {
            table_.assign(n * n, 0);
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = u + 1; v < n; ++v) {
                    const auto c = static_cast<std::uint32_t>(
                        g.common_neighbor_count(static_cast<Vertex>(u), static_cast<Vertex>(v)));
                    table_[u * n + v] = c;
                    table_[v * n + u] = c;
                }
        }
    }

    std::size_t operator()(Vertex u, Vertex v) const {
        if (!table_.empty()) return table_[static_cast<std::size_t>(u) * g_.order() + static_cast<std::size_t>(v)];
        return g_.common_neighbor_count(u, v);
    }

private:
    static constexpr std::size_t kTableLimit = 2000;
    const Graph& g_;
    std::vector<std::uint32_t> table_;
};

// Subset test for the partition invariant with subsets of size m.
class SubsetRule {
public:
    SubsetRule(const Graph& g, std::size_t threshold, std::size_t m) : g_(g), counts_(g), thr_(threshold), m_(m) {}

    bool fits(const std::vector<Vertex>& part, Vertex v) const {
        if (m_ <= 1) return g_.degree(v) >= thr_;
        if (m_ == 2) {
            for (const Vertex u : part)
                if (counts_(u, v) < thr_) return false;
            return true;
        }
        std::vector<Vertex> chosen{v};
        return all_subsets(part, 0, chosen);
    }

    bool compatible(const std::vector<Vertex>& a, const std::vector<Vertex>& b) const {
        if (m_ == 2) {
            for (const Vertex u : a)
                for (const Vertex v : b)
                    if (counts_(u, v) < thr_) return false;
            return true;
        }
        std::vector<Vertex> merged;
        for (const Vertex v : b) {
            if (!fits(a, v) && !merged.empty()) return false;
            merged.push_back(v);
        }
        std::vector<Vertex> acc = a;
        for (const Vertex v : b) {
            if (!fits(acc, v)) return false;
            acc.push_back(v);
        }
        return true;
    }

    bool holds(const std::vector<Vertex>& part) const {
        std::vector<Vertex> acc;
        for (const Vertex v : part) {
            if (!fits(acc, v)) return false;
            acc.push_back(v);
        }
        return true;
    }

private:
    // Every (m-1)-subset of part[from..] together with `chosen` must pass.
    bool all_subsets(const std::vector<Vertex>& part, std::size_t from, std::vector<Vertex>& chosen) const {
        if (chosen.size() == m_) return common_neighborhood(g_, chosen).size() >= thr_;
        if (part.size() - from < m_ - chosen.size()) return true;
        for (std::size_t k = from; k < part.size(); ++k) {
            chosen.push_back(part[k]);
            const bool ok = all_subsets(part, k + 1, chosen);
            chosen.pop_back();
            if (!ok) return false;
        }
        return true;
    }

    const Graph& g_;
    CommonCounts counts_;
    std::size_t thr_;
    std::size_t m_;
};

std::vector<std::uint32_t> colours_of_size(std::size_t bits, std::size_t size) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << bits); ++mask)
        if (static_cast<std::size_t>(std::popcount(mask)) == size) out.push_back(mask);
    return out;
}

// Witness-colouring step on one side of the equipartition: returns a colour
// index per vertex of `side` (or -1).
std::vector<long> colour_side(const Graph& g, const std::vector<Vertex>& side, const std::vector<Vertex>& other,
                              const Params& params, Rng& rng) {
    std::vector<Vertex> pool = other;
    shuffle(pool, rng);
    pool.resize(std::min(pool.size(), params.witness_set_size));
    const auto colours = colours_of_size(pool.size(), std::min(params.colour_size, pool.size()));
    std::vector<std::uint32_t> mask(side.size(), 0);
    for (std::size_t k = 0; k < side.size(); ++k)
        for (std::size_t b = 0; b < pool.size(); ++b)
            if (g.has_edge(side[k], pool[b])) mask[k] |= std::uint32_t{1} << b;
    std::vector<std::size_t> class_size(colours.size(), 0);
    for (std::size_t c = 0; c < colours.size(); ++c)
        for (const auto m : mask)
            if ((m & colours[c]) == colours[c]) ++class_size[c];
    std::vector<long> choice(side.size(), -1);
    std::vector<std::size_t> good;
    for (std::size_t k = 0; k < side.size(); ++k) {
        good.clear();
        for (std::size_t c = 0; c < colours.size(); ++c)
            if ((mask[k] & colours[c]) == colours[c] && class_size[c] >= params.min_colour_class) good.push_back(c);
        if (!good.empty()) choice[k] = static_cast<long>(good[uniform_below(rng, good.size())]);
    }
    return choice;
}

}  // namespace

bool partition_satisfies(const Graph& g, const Partition& partition, std::size_t threshold, std::size_t subset_size) {
    std::vector<char> seen(g.order(), 0);
    for (const auto& part : partition.parts)
        for (const Vertex v : part) {
            if (!g.contains(v) || seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
    const SubsetRule rule(g, threshold, subset_size);
    for (const auto& part : partition.parts)
        if (!rule.holds(part)) return false;
    return true;
}

Partition partition_vertices(const Graph& g, const Params& params, Rng& rng, std::size_t subset_size) {
    const auto n = g.order();
    const SubsetRule rule(g, params.common_nbr_threshold, subset_size);

    std::vector<std::vector<Vertex>> best_parts;
    std::vector<Vertex> best_left;
    bool have_best = false;
    for (std::size_t round = 0; round < std::max<std::size_t>(1, params.partition_retries); ++round) {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), Vertex{0});
        shuffle(order, rng);
        const std::vector<Vertex> a(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n / 2));
        const std::vector<Vertex> b(order.begin() + static_cast<std::ptrdiff_t>(n / 2), order.end());
        std::vector<std::vector<Vertex>> parts;
        std::vector<Vertex> left;
        for (const auto* side : {&b, &a}) {
            const auto& other = side == &b ? a : b;
            if (side->empty()) continue;
            if (other.empty()) {
                left.insert(left.end(), side->begin(), side->end());
                continue;
            }
            const auto choice = colour_side(g, *side, other, params, rng);
            std::map<long, std::vector<Vertex>> groups;
            for (std::size_t k = 0; k < side->size(); ++k) {
                if (choice[k] < 0) {
                    left.push_back((*side)[k]);
                } else {
                    groups[choice[k]].push_back((*side)[k]);
                }
            }
            for (auto& [c, members] : groups) {
                std::sort(members.begin(), members.end());
                if (rule.holds(members)) {
                    parts.push_back(std::move(members));
                } else {
                    left.insert(left.end(), members.begin(), members.end());
                }
            }
        }
        const auto placed = n - left.size();
        if (!have_best || placed > n - best_left.size()) {
            best_parts = std::move(parts);
            best_left = std::move(left);
            have_best = true;
        }
        if (best_left.empty()) break;
    }

    // Greedy repair: leftovers join the first part that keeps the invariant.
    auto parts = std::move(best_parts);
    std::sort(best_left.begin(), best_left.end());
    for (const Vertex v : best_left) {
        bool placed = false;
        for (auto& part : parts) {
            if (rule.fits(part, v)) {
                part.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) parts.push_back({v});
    }
    // Merge parts whose union still satisfies the invariant.
    bool merged = true;
    while (merged) {
        merged = false;
        std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
        for (std::size_t i = 0; i < parts.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < parts.size() && !merged; ++j)
                if (rule.compatible(parts[i], parts[j])) {
                    parts[i].insert(parts[i].end(), parts[j].begin(), parts[j].end());
                    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
    }
    for (auto& part : parts) std::sort(part.begin(), part.end());
    std::sort(parts.begin(), parts.end());

    Partition out;
    out.parts = std::move(parts);
    out.part_of.assign(n, 0);
    for (std::size_t i = 0; i < out.parts.size(); ++i)
        for (const Vertex v : out.parts[i]) out.part_of[static_cast<std::size_t>(v)] = i;
    if (!partition_satisfies(g, out, params.common_nbr_threshold, subset_size)) {
        throw Error("partition verification failed");
    }
    return out;
}

MSet m_set(const Graph& g, Edge xy, std::size_t threshold) {
    const Vertex x = xy.u, y = xy.v;
    if (!g.has_edge(x, y)) {
        throw PreconditionError("(" + std::to_string(x) + "," + std::to_string(y) + ") is not an edge");
    }
    const auto n = g.order();
    std::vector<char> nx(n, 0), ny(n, 0);
    for (const Vertex v : g.neighbors(x)) nx[static_cast<std::size_t>(v)] = 1;
    for (const Vertex v : g.neighbors(y)) ny[static_cast<std::size_t>(v)] = 1;
    std::vector<Vertex> cand;
    std::set_union(g.neighbors(x).begin(), g.neighbors(x).end(), g.neighbors(y).begin(), g.neighbors(y).end(),
                   std::back_inserter(cand));
    MSet out{xy, {}, {}};
    for (const Vertex z : cand) {
        if (z == x || z == y) continue;
        const bool yz = ny[static_cast<std::size_t>(z)];
        const bool zx = nx[static_cast<std::size_t>(z)];
        std::size_t count = 0;
        for (const Vertex w : g.neighbors(z)) {
            if (w == x || w == y) continue;
            if ((yz && nx[static_cast<std::size_t>(w)]) || (zx && ny[static_cast<std::size_t>(w)])) ++count;
        }
        if (count >= threshold && count > 0) {
            out.members.push_back(z);
            out.witnesses.push_back(count);
        }
    }
    return out;
}

std::vector<char> m_set_union(const Graph& g, std::span<const Edge> edges, std::size_t threshold) {
    std::vector<char> mask(g.order(), 0);
    for (const auto& e : edges)
        for (const Vertex z : m_set(g, e, threshold).members) mask[static_cast<std::size_t>(z)] = 1;
    return mask;
}

CoverGraphResult cover_graph(const Graph& g, std::span<const Vertex> s, std::span<const Vertex> t,
                             const Params& params, bool audit) {
    if (t.empty()) throw PreconditionError("cover_graph: T is empty");
    std::vector<char> in_s(g.order(), 0), in_t(g.order(), 0);
    for (const Vertex v : s) {
        if (!g.contains(v)) throw PreconditionError("cover_graph: vertex outside the graph");
        in_s[static_cast<std::size_t>(v)] = 1;
    }
    for (const Vertex v : t) {
        if (!g.contains(v) || !in_s[static_cast<std::size_t>(v)]) throw PreconditionError("cover_graph: T is not inside S");
        in_t[static_cast<std::size_t>(v)] = 1;
    }
    CoverGraphResult out;
    out.neighbour_threshold =
        params.cover_nbr_threshold > 0
            ? params.cover_nbr_threshold
            : std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(
                                           std::pow(static_cast<double>(t.size()), 1.0 - 2.0 * params.zeta) + 1e-9)));
    // |N(u) ∩ T| for every u, computed once.
    std::vector<std::size_t> into_t(g.order(), 0);
    for (const Vertex w : t)
        for (const Vertex u : g.neighbors(w)) ++into_t[static_cast<std::size_t>(u)];
    EdgeSet edges;
    for (const Vertex v : s)
        for (const Vertex u : g.neighbors(v))
            if (into_t[static_cast<std::size_t>(u)] >= out.neighbour_threshold) edges.insert(make_edge(u, v));
    out.helper = Graph(g.order(), std::vector<Edge>(edges.begin(), edges.end()));
    std::size_t min_deg = s.empty() ? 0 : g.order();
    for (const Vertex v : s) min_deg = std::min(min_deg, out.helper.degree(v));
    out.min_degree_on_s = min_deg;
    if (audit) {
        std::size_t low = g.order();
        for (const auto& e : out.helper.edges()) {
            std::size_t hit = 0;
            for (const Vertex z : m_set(g, e, params.mset_threshold).members) hit += in_t[static_cast<std::size_t>(z)];
            low = std::min(low, hit);
        }
        if (!out.helper.edges().empty()) out.min_m_intersection = low;
    }
    return out;
}

namespace {

// Listed edges ab forming a C4 with uv: non-incident, and v~a, u~b or v~b, u~a.
bool forms_c4(const Graph& g, Edge uv, Edge ab) {
    if (incident(uv, ab)) return false;
    return (g.has_edge(uv.v, ab.u) && g.has_edge(uv.u, ab.v)) || (g.has_edge(uv.v, ab.v) && g.has_edge(uv.u, ab.u));
}

}  // namespace

CloseGraphResult close_graph(const Graph& g, std::span<const Vertex> s, const std::vector<std::vector<Edge>>& sets,
                             const Params& params, bool audit) {
    {
        EdgeSet seen;
        for (const auto& set : sets)
            for (const auto& raw : set) {
                const Edge e = make_edge(raw.u, raw.v);
                if (!g.has_edge(e.u, e.v)) throw PreconditionError("close_graph: listed edge is not in the graph");
                if (!seen.insert(e).second) throw PreconditionError("close_graph: edge sets overlap");
            }
    }
    const auto n = g.order();
    const std::size_t count = sets.size();
    std::vector<std::size_t> misses(n, 0);
    for (const auto& set : sets) {
        const auto mask = m_set_union(g, set, params.mset_threshold);
        for (const Vertex v : s) misses[static_cast<std::size_t>(v)] += mask[static_cast<std::size_t>(v)] ? 0 : 1;
    }
    CloseGraphResult out;
    std::vector<char> bad(n, 0);
    for (const Vertex v : s) {
        if (2 * misses[static_cast<std::size_t>(v)] >= count) {
            bad[static_cast<std::size_t>(v)] = 1;
            out.bad.push_back(v);
        }
    }
    std::sort(out.bad.begin(), out.bad.end());

    EdgeSet edges;
    std::vector<std::size_t> hits(n, 0);
    std::vector<std::size_t> stamp(n, 0);
    std::size_t clock = 0;
    for (const Vertex v : s) {
        if (bad[static_cast<std::size_t>(v)]) continue;
        std::fill(hits.begin(), hits.end(), 0);
        for (const auto& set : sets) {
            ++clock;
            for (const auto& ab : set) {
                if (touches(ab, v)) continue;
                for (const auto& [near, far] : {std::pair{ab.u, ab.v}, std::pair{ab.v, ab.u}}) {
                    if (!g.has_edge(v, near)) continue;
                    // u ∈ N(v) ∩ N(far), u ∉ {a,b}: uv and ab form a C4.
                    for (const Vertex u : g.neighbors(far)) {
                        if (u == near || u == v || !g.has_edge(u, v)) continue;
                        if (stamp[static_cast<std::size_t>(u)] == clock) continue;
                        stamp[static_cast<std::size_t>(u)] = clock;
                        ++hits[static_cast<std::size_t>(u)];
                    }
                }
            }
        }
        for (const Vertex u : g.neighbors(v))
            if (hits[static_cast<std::size_t>(u)] >= params.close_index_threshold) edges.insert(make_edge(u, v));
    }
    out.helper = Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
    if (audit && !out.helper.edges().empty()) {
        std::size_t low = std::numeric_limits<std::size_t>::max();
        for (const auto& e : out.helper.edges()) {
            std::size_t partners = 0;
            for (const auto& set : sets)
                for (const auto& ab : set) partners += forms_c4(g, e, make_edge(ab.u, ab.v)) ? 1 : 0;
            low = std::min(low, partners);
        }
        out.min_partner_count = low;
    }
    return out;
}

std::size_t implanted_within(const Graph& g, const CycleCover& cycle, std::span<const Edge> edges) {
    std::size_t total = 0;
    auto chord = [&](Vertex a, Vertex b) { return g.has_edge(a, b) && !cycle.has_edge(a, b); };
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const Edge e = edges[i], f = edges[j];
            if (incident(e, f) || !cycle.has_edge(e.u, e.v) || !cycle.has_edge(f.u, f.v)) continue;
            total += (chord(e.u, f.u) && chord(e.v, f.v)) ? 1 : 0;
            total += (chord(e.u, f.v) && chord(e.v, f.u)) ? 1 : 0;
        }
    return total;
}

std::size_t GoodSetLedger::sum_t() const {
    std::size_t s = 0;
    for (const auto& p : parts) s += p.t();
    return s;
}

std::size_t GoodSetLedger::sum_m() const {
    std::size_t s = 0;
    for (const auto& p : parts) s += p.m();
    return s;
}

std::vector<Edge> GoodSetLedger::protected_edges() const {
    std::vector<Edge> out;
    for (const auto& p : parts) {
        for (const auto& set : p.full) out.insert(out.end(), set.begin(), set.end());
        out.insert(out.end(), p.partial.begin(), p.partial.end());
    }
    return out;
}

namespace {

std::vector<Edge> part_edges(const PartLedger& p) {
    std::vector<Edge> all;
    for (const auto& set : p.full) all.insert(all.end(), set.begin(), set.end());
    all.insert(all.end(), p.partial.begin(), p.partial.end());
    return all;
}

std::size_t uncovered(const std::vector<char>& mask, const std::vector<Vertex>& part) {
    std::size_t c = 0;
    for (const Vertex v : part) c += mask[static_cast<std::size_t>(v)] ? 0 : 1;
    return c;
}

enum class Growth { None, Completed, Extended };

// Tries to add e to the part's partial set under the bookkeeping rules.
Growth grow(const Graph& g, const CycleCover& cycle, const std::vector<Vertex>& part, PartLedger& ledger, Edge e,
            const Params& params) {
    auto next = ledger.partial;
    next.push_back(e);
    if (ledger.t() >= params.set_count_cap) {
        if (next.size() > params.overflow_cap) return Growth::None;
        auto all = part_edges(ledger);
        all.push_back(e);
        if (implanted_within(g, cycle, all) < next.size() * params.close_index_threshold) return Growth::None;
        ledger.partial = std::move(next);
        return Growth::Extended;
    }
    const auto mask = m_set_union(g, next, params.mset_threshold);
    const auto missing = uncovered(mask, part);
    if (missing <= params.coverage_slack && next.size() <= params.good_set_size_cap) {
        ledger.full.push_back(std::move(next));
        ledger.partial.clear();
        return Growth::Completed;
    }
    if (missing > params.coverage_slack && next.size() < params.good_set_size_cap &&
        part.size() - missing >= next.size() * params.growth_per_edge) {
        ledger.partial = std::move(next);
        return Growth::Extended;
    }
    return Growth::None;
}

}  // namespace

std::optional<std::string> ledger_violation(const Graph& g, const CycleCover& cycle, const Partition& partition,
                                            const GoodSetLedger& ledger, const Params& params) {
    if (ledger.parts.size() != partition.parts.size()) return "ledger and partition sizes differ";
    for (std::size_t i = 0; i < ledger.parts.size(); ++i) {
        const auto& p = ledger.parts[i];
        const auto& part = partition.parts[i];
        const auto tag = "part " + std::to_string(i) + ": ";
        const auto all = part_edges(p);
        EdgeSet seen;
        for (const auto& e : all) {
            if (!cycle.has_edge(e.u, e.v)) return tag + "ledger edge off the cycle";
            if (!seen.insert(e).second) return tag + "ledger sets overlap";
        }
        if (p.t() > params.set_count_cap) return tag + "too many completed sets";
        for (const auto& set : p.full) {
            if (set.size() > params.good_set_size_cap) return tag + "completed set too large";
            if (uncovered(m_set_union(g, set, params.mset_threshold), part) > params.coverage_slack) {
                return tag + "completed set leaves too much of the part uncovered";
            }
        }
        if (p.t() < params.set_count_cap) {
            if (p.m() > params.good_set_size_cap) return tag + "partial set too large";
            const auto missing = uncovered(m_set_union(g, p.partial, params.mset_threshold), part);
            if (missing <= params.coverage_slack) return tag + "partial set already covers the part";
            if (part.size() - missing < p.m() * params.growth_per_edge) return tag + "partial set grows too slowly";
        } else {
            if (p.m() > params.overflow_cap) return tag + "overflow set too large";
            if (implanted_within(g, cycle, all) < p.m() * params.close_index_threshold) {
                return tag + "overflow set yields too few implanted C4's";
            }
        }
    }
    return std::nullopt;
}

GoodSetLedger seed_ledger(const Graph& g, const CycleCover& cycle, const Partition& partition, const Params& params,
                          std::span<const Edge> reserved) {
    GoodSetLedger ledger;
    ledger.parts.resize(partition.parts.size());
    for (std::size_t i = 0; i < partition.parts.size(); ++i) {
        if (partition.parts[i].size() <= params.coverage_slack) {
            ledger.parts[i].full.assign(params.set_count_cap, {});
        }
    }
    EdgeSet taken;
    for (const auto& e : reserved) taken.insert(make_edge(e.u, e.v));
    for (const auto& e : cycle.edge_list()) {
        if (taken.count(e)) continue;
        for (std::size_t i = 0; i < partition.parts.size(); ++i) {
            if (grow(g, cycle, partition.parts[i], ledger.parts[i], e, params) != Growth::None) {
                taken.insert(e);
                break;
            }
        }
    }
    return ledger;
}

EnrichReport enrich(const Graph& g, const CycleCover& cycle, std::span<const Edge> e0, const Params& params, Rng& rng) {
    if (cycle.components() != 1 || cycle.order() != g.order()) {
        throw PreconditionError("enrich needs a Hamilton cycle of the graph");
    }
    validate_cover(g, cycle);
    std::vector<Edge> protected0;
    for (const auto& raw : e0) {
        const Edge e = make_edge(raw.u, raw.v);
        if (!cycle.has_edge(e.u, e.v)) {
            throw PreconditionError("E0 edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") is not on the cycle");
        }
        protected0.push_back(e);
    }
    if (protected0.size() > params.protected_cap) throw PreconditionError("E0 exceeds protected_cap");

    EnrichReport report;
    report.cycle = cycle;
    report.h_before = count_h_edges(g, cycle);
    report.h_after = report.h_before;
    if (report.h_before >= params.h_edge_target) {
        report.target_met = true;
        report.note = "target already met";
        report.potential_trace.push_back({0, 0, report.h_before});
        return report;
    }

    const auto partition = partition_vertices(g, params, rng);
    report.parts = partition.parts.size();
    auto ledger = seed_ledger(g, cycle, partition, params, protected0);
    if (auto bad = ledger_violation(g, cycle, partition, ledger, params)) throw Error("seeded ledger invalid: " + *bad);
    Potential potential{ledger.sum_t(), ledger.sum_m(), report.h_before};
    report.potential_trace.push_back(potential);

    std::size_t failures = 0;
    for (std::size_t iter = 0; iter < params.enrich_iterations; ++iter) {
        const auto& current = report.cycle;
        // Helper graphs: growth targets for unsaturated parts, C4 partners
        // of completed sets for saturated ones.
        std::map<Edge, std::vector<std::size_t>> owner;
        std::vector<Vertex> bad;
        for (std::size_t i = 0; i < partition.parts.size(); ++i) {
            const auto& part = partition.parts[i];
            const auto& pl = ledger.parts[i];
            Graph helper;
            if (pl.t() < params.set_count_cap) {
                const auto mask = m_set_union(g, pl.partial, params.mset_threshold);
                std::vector<Vertex> t;
                for (const Vertex v : part)
                    if (!mask[static_cast<std::size_t>(v)]) t.push_back(v);
                if (t.empty()) continue;
                helper = cover_graph(g, part, t, params).helper;
            } else {
                auto close = close_graph(g, part, pl.full, params);
                helper = std::move(close.helper);
                bad.insert(bad.end(), close.bad.begin(), close.bad.end());
            }
            for (const auto& e : helper.edges()) {
                if (!current.has_edge(e.u, e.v)) owner[e].push_back(i);
            }
        }
        std::vector<Edge> desirable_edges;
        for (const auto& [e, parts] : owner) desirable_edges.push_back(e);
        if (desirable_edges.empty()) {
            // The ledger offers nothing (at small n every part tends to start
            // saturated); rewire toward any chord and keep only H gains.
            for (const auto& e : g.edges())
                if (!current.has_edge(e.u, e.v)) desirable_edges.push_back(e);
            bad.clear();
            if (desirable_edges.empty()) {
                report.note = "G′ empty";
                break;
            }
            ++report.fallback_rounds;
        }
        const Graph desirable(g.order(), desirable_edges);

        RewireRequest req;
        req.host = &g;
        req.cycle = &current;
        req.protected_edges = protected0;
        const auto held = ledger.protected_edges();
        req.protected_edges.insert(req.protected_edges.end(), held.begin(), held.end());
        req.desirable = &desirable;
        std::sort(bad.begin(), bad.end());
        bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
        req.bad = bad;
        if (bad_closure(req).size() >= g.order()) {
            report.note = "every vertex is protected or bad";
            break;
        }
        ++report.thomassen_calls;
        std::string why;
        auto rewired = second_hamilton_cycle(req, params, rng, &why);
        if (!rewired) {
            ++report.rejected;
            if (++failures >= params.rewire_attempts) {
                report.note = "rewiring failed: " + why;
                break;
            }
            continue;
        }
        const auto& next = rewired->cycle;
        // Attribute a new desirable edge to a part whose ledger it advances.
        std::optional<GoodSetLedger> improved;
        for (const auto& e : next.edge_list()) {
            if (current.has_edge(e.u, e.v)) continue;
            const auto it = owner.find(e);
            if (it == owner.end()) continue;
            for (const auto i : it->second) {
                auto trial = ledger;
                if (grow(g, next, partition.parts[i], trial.parts[i], e, params) != Growth::None) {
                    improved = std::move(trial);
                    break;
                }
            }
            if (improved) break;
        }
        const auto h_next = count_h_edges(g, next);
        const GoodSetLedger& candidate = improved ? *improved : ledger;
        const Potential next_potential{candidate.sum_t(), candidate.sum_m(), h_next};
        if (next_potential <= potential || ledger_violation(g, next, partition, candidate, params)) {
            ++report.rejected;
            if (++failures >= params.rewire_attempts) {
                report.note = "no improving rewire found";
                break;
            }
            continue;
        }
        failures = 0;
        ++report.accepted;
        if (improved) ledger = std::move(*improved);
        report.cycle = next;
        potential = next_potential;
        report.potential_trace.push_back(potential);
        report.h_after = h_next;
        if (h_next >= params.h_edge_target) {
            report.target_met = true;
            break;
        }
    }
    if (report.note.empty() && !report.target_met) report.note = "iteration budget exhausted";
    report.ledger = std::move(ledger);
    return report;
}

}  // namespace twofactor
