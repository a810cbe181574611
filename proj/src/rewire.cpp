#include "twofactor/rewire.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace twofactor {

namespace {

void require_hamilton(const CycleCover& cycle, std::size_t n) {
    if (cycle.components() != 1 || cycle.order() != n) {
        throw PreconditionError("expected a Hamilton cycle on the host's vertex set");
    }
}

// Desirable edges usable for rewiring: present in both graphs.
Graph usable_graph(const Graph& host, const Graph& desirable) {
    std::vector<Edge> edges;
    for (const auto& e : desirable.edges()) {
        if (host.has_edge(e.u, e.v)) edges.push_back(e);
    }
    return Graph(host.order(), std::move(edges));
}

bool dominated(const Graph& host, const CycleCover& cycle, Vertex x, const std::vector<char>& in_s) {
    for (const Vertex s : host.neighbors(x)) {
        if (in_s[static_cast<std::size_t>(s)] && !cycle.has_edge(x, s)) return true;
    }
    return false;
}

}  // namespace

bool check_independent_dominating(const Graph& host, const CycleCover& cycle, std::span<const Vertex> s) {
    require_hamilton(cycle, host.order());
    std::vector<char> in_s(host.order(), 0);
    for (const Vertex v : s) {
        if (!host.contains(v)) throw PreconditionError("vertex " + std::to_string(v) + " is not in the graph");
        in_s[static_cast<std::size_t>(v)] = 1;
    }
    for (const Vertex v : s) {
        if (in_s[static_cast<std::size_t>(cycle.successor(v))]) return false;
    }
    for (const Vertex v : s) {
        for (const Vertex x : {cycle.predecessor(v), cycle.successor(v)}) {
            if (!dominated(host, cycle, x, in_s)) return false;
        }
    }
    return true;
}

std::vector<Vertex> switch_candidates(const CycleCover& cycle, std::span<const Vertex> b_prime) {
    std::vector<char> blocked(cycle.order(), 0);
    for (const Vertex v : b_prime) {
        blocked[static_cast<std::size_t>(v)] = 1;
        blocked[static_cast<std::size_t>(cycle.predecessor(v))] = 1;
        blocked[static_cast<std::size_t>(cycle.successor(v))] = 1;
    }
    std::vector<Vertex> a;
    for (std::size_t v = 0; v < cycle.order(); ++v) {
        if (!blocked[v]) a.push_back(static_cast<Vertex>(v));
    }
    return a;
}

std::optional<std::vector<Vertex>> sample_switch_set(const Graph& desirable, const CycleCover& cycle,
                                                     std::span<const Vertex> b_prime, const Params& params,
                                                     Rng& rng) {
    const auto n = cycle.order();
    require_hamilton(cycle, desirable.order());
    const auto a = switch_candidates(cycle, b_prime);
    if (a.size() < 2) return std::nullopt;
    const double nn = static_cast<double>(std::max<std::size_t>(n, 3));
    const double base = params.sample_probability > 0.0 ? params.sample_probability : 1.0 / std::sqrt(nn * std::log(nn));
    std::vector<char> in_b(n, 0);
    for (const Vertex v : b_prime) in_b[static_cast<std::size_t>(v)] = 1;

    std::vector<char> in_s(n, 0);
    for (std::size_t attempt = 0; attempt < params.sample_retries; ++attempt) {
        const double q = std::min(0.5, base * std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(attempt, 30))));
        std::fill(in_s.begin(), in_s.end(), 0);
        std::vector<Vertex> s;
        for (const Vertex v : a) {
            if (!bernoulli(rng, q)) continue;
            // Keep S independent on the cycle: skip v if a neighbour is in.
            if (in_s[static_cast<std::size_t>(cycle.predecessor(v))] ||
                in_s[static_cast<std::size_t>(cycle.successor(v))]) {
                continue;
            }
            in_s[static_cast<std::size_t>(v)] = 1;
            s.push_back(v);
        }
        // Drop S-vertices whose cycle neighbours are not dominated until
        // the rest is stable.
        bool changed = true;
        while (changed && s.size() >= 2) {
            changed = false;
            for (const Vertex v : s) {
                if (!in_s[static_cast<std::size_t>(v)]) continue;
                for (const Vertex x : {cycle.predecessor(v), cycle.successor(v)}) {
                    if (!dominated(desirable, cycle, x, in_s)) {
                        in_s[static_cast<std::size_t>(v)] = 0;
                        changed = true;
                        break;
                    }
                }
            }
            s.erase(std::remove_if(s.begin(), s.end(), [&](Vertex v) { return !in_s[static_cast<std::size_t>(v)]; }),
                    s.end());
        }
        if (s.size() < 2) continue;
        if (params.full_domination) {
            bool all = true;
            for (std::size_t v = 0; v < n && all; ++v) {
                if (!in_b[v] && !in_s[v]) all = dominated(desirable, cycle, static_cast<Vertex>(v), in_s);
            }
            if (!all) continue;
        }
        if (check_independent_dominating(desirable, cycle, s)) return s;
    }
    return std::nullopt;
}

double rewire_degree_bound(std::size_t n, std::size_t b_prime_size) {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
    const double ln = std::log(nn);
    return std::sqrt(nn) * ln * ln + 3.0 * static_cast<double>(b_prime_size) + 2.0;
}

std::vector<Vertex> bad_closure(const RewireRequest& req) {
    std::vector<Vertex> out = req.bad;
    for (const auto& e : req.protected_edges) {
        out.push_back(e.u);
        out.push_back(e.v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

struct Segment {
    Vertex first;
    Vertex last;
    std::vector<Vertex> inner;  // first..last along the cycle
};

class InsertionSearch {
public:
    InsertionSearch(const Graph& usable, const CycleCover& cycle, std::vector<Vertex> s,
                    std::vector<Segment> segs, std::size_t budget, Rng& rng)
        : usable_(usable), cycle_(cycle), s_(std::move(s)), segs_(std::move(segs)), budget_(budget), rng_(rng) {}

    std::optional<std::vector<Vertex>> run() {
        used_s_.assign(s_.size(), 0);
        used_seg_.assign(segs_.size(), 0);
        used_seg_[0] = 1;
        order_.push_back({0, false});
        if (dfs(segs_[0].last)) return assemble();
        return std::nullopt;
    }

private:
    bool joinable(Vertex a, Vertex b) const { return cycle_.has_edge(a, b) || usable_.has_edge(a, b); }

    bool dfs(Vertex end) {
        if (nodes_++ >= budget_) return false;
        const std::size_t placed = order_.size();
        std::vector<std::size_t> s_idx;
        for (std::size_t k = 0; k < s_.size(); ++k)
            if (!used_s_[k] && joinable(end, s_[k])) s_idx.push_back(k);
        shuffle(s_idx, rng_);
        if (placed == segs_.size()) {
            for (const auto k : s_idx) {
                if (!joinable(s_[k], segs_[0].first)) continue;
                inserted_.push_back(k);
                if (differs()) return true;
                inserted_.pop_back();
            }
            return false;
        }
        std::vector<std::pair<std::size_t, bool>> seg_opts;
        for (std::size_t j = 0; j < segs_.size(); ++j) {
            if (used_seg_[j]) continue;
            seg_opts.push_back({j, false});
            if (segs_[j].first != segs_[j].last) seg_opts.push_back({j, true});
        }
        shuffle(seg_opts, rng_);
        for (const auto k : s_idx) {
            used_s_[k] = 1;
            inserted_.push_back(k);
            for (const auto& [j, reversed] : seg_opts) {
                const Vertex entry = reversed ? segs_[j].last : segs_[j].first;
                if (!joinable(s_[k], entry)) continue;
                used_seg_[j] = 1;
                order_.push_back({j, reversed});
                if (dfs(reversed ? segs_[j].first : segs_[j].last)) return true;
                order_.pop_back();
                used_seg_[j] = 0;
                if (nodes_ >= budget_) break;
            }
            inserted_.pop_back();
            used_s_[k] = 0;
            if (nodes_ >= budget_) return false;
        }
        return false;
    }

    std::vector<Vertex> sequence() const {
        std::vector<Vertex> seq;
        for (std::size_t idx = 0; idx < order_.size(); ++idx) {
            const auto& [j, reversed] = order_[idx];
            const auto& in = segs_[j].inner;
            if (reversed) {
                seq.insert(seq.end(), in.rbegin(), in.rend());
            } else {
                seq.insert(seq.end(), in.begin(), in.end());
            }
            seq.push_back(s_[inserted_[idx]]);
        }
        return seq;
    }

    bool differs() const {
        const auto seq = sequence();
        for (std::size_t p = 0; p < seq.size(); ++p) {
            if (!cycle_.has_edge(seq[p], seq[(p + 1) % seq.size()])) return true;
        }
        return false;
    }

    std::vector<Vertex> assemble() const { return sequence(); }

    const Graph& usable_;
    const CycleCover& cycle_;
    std::vector<Vertex> s_;
    std::vector<Segment> segs_;
    std::size_t budget_;
    Rng& rng_;
    std::size_t nodes_ = 0;
    std::vector<char> used_s_;
    std::vector<char> used_seg_;
    std::vector<std::pair<std::size_t, bool>> order_;
    std::vector<std::size_t> inserted_;
};

std::optional<CycleCover> insert_switch_set(const Graph& usable, const CycleCover& cycle, std::span<const Vertex> s,
                                            std::size_t budget, Rng& rng) {
    const auto n = cycle.order();
    if (s.size() < 2) return std::nullopt;
    std::vector<char> in_s(n, 0);
    for (const Vertex v : s) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) return std::nullopt;
        in_s[static_cast<std::size_t>(v)] = 1;
    }
    for (const Vertex v : s) {
        if (in_s[static_cast<std::size_t>(cycle.successor(v))]) return std::nullopt;
    }
    // Walk the cycle from the first S-vertex, cutting it into the paths of C - S.
    const auto& order = cycle.cycle(0);
    std::size_t start = 0;
    while (!in_s[static_cast<std::size_t>(order[start])]) ++start;
    std::vector<Vertex> s_order;
    std::vector<Segment> segs;
    for (std::size_t step = 0; step < n; ++step) {
        const Vertex v = order[(start + step) % n];
        if (in_s[static_cast<std::size_t>(v)]) {
            s_order.push_back(v);
            segs.push_back({});
        } else {
            auto& seg = segs.back();
            if (seg.inner.empty()) seg.first = v;
            seg.last = v;
            seg.inner.push_back(v);
        }
    }
    InsertionSearch search(usable, cycle, s_order, segs, budget, rng);
    auto seq = search.run();
    if (!seq) return std::nullopt;
    std::vector<Edge> edges;
    for (std::size_t p = 0; p < seq->size(); ++p) edges.push_back(make_edge((*seq)[p], (*seq)[(p + 1) % seq->size()]));
    return cover_from_edges(n, edges);
}

// Plain backtracking Hamilton search in usable ∪ C, forcing `forced` edges
// and rejecting C itself.
std::optional<CycleCover> exhaustive_hamilton(const Graph& usable, const CycleCover& cycle,
                                              const std::vector<Edge>& forced, std::size_t budget) {
    const auto n = cycle.order();
    std::vector<std::vector<Vertex>> adj(n);
    std::vector<std::vector<Vertex>> must(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto vv = static_cast<Vertex>(v);
        for (const Vertex u : usable.neighbors(vv)) adj[v].push_back(u);
        for (const Vertex u : {cycle.predecessor(vv), cycle.successor(vv)})
            if (std::find(adj[v].begin(), adj[v].end(), u) == adj[v].end()) adj[v].push_back(u);
        std::sort(adj[v].begin(), adj[v].end());
    }
    for (const auto& e : forced) {
        must[static_cast<std::size_t>(e.u)].push_back(e.v);
        must[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<Vertex> path{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    std::size_t nodes = 0;
    std::optional<CycleCover> found;

    std::function<bool()> dfs = [&]() -> bool {
        if (++nodes > budget) return false;
        const Vertex v = path.back();
        if (path.size() == n) {
            if (std::find(adj[static_cast<std::size_t>(v)].begin(), adj[static_cast<std::size_t>(v)].end(), 0) ==
                adj[static_cast<std::size_t>(v)].end()) {
                return false;
            }
            std::vector<Edge> edges;
            bool differs = false;
            for (std::size_t p = 0; p < n; ++p) {
                const Edge e = make_edge(path[p], path[(p + 1) % n]);
                edges.push_back(e);
                differs = differs || !cycle.has_edge(e.u, e.v);
            }
            if (!differs) return false;
            std::sort(edges.begin(), edges.end());
            for (const auto& f : forced)
                if (!std::binary_search(edges.begin(), edges.end(), f)) return false;
            found = cover_from_edges(n, edges);
            return true;
        }
        // A forced edge to an unvisited vertex must be taken now, unless it is
        // the edge back to the start.
        std::vector<Vertex> next;
        for (const Vertex u : must[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(u)]) next.push_back(u);
        }
        if (next.size() > 1) return false;
        if (next.empty()) {
            for (const Vertex u : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(u)]) next.push_back(u);
        }
        for (const Vertex u : next) {
            seen[static_cast<std::size_t>(u)] = 1;
            path.push_back(u);
            if (dfs()) return true;
            path.pop_back();
            seen[static_cast<std::size_t>(u)] = 0;
            if (nodes > budget) return false;
        }
        return false;
    };
    dfs();
    return found;
}

}  // namespace

std::optional<CycleCover> rewire_with_switch_set(const RewireRequest& req, std::span<const Vertex> s,
                                                 const Params& params, Rng& rng) {
    if (!req.host || !req.cycle || !req.desirable) throw PreconditionError("incomplete rewire request");
    require_hamilton(*req.cycle, req.host->order());
    const auto usable = usable_graph(*req.host, *req.desirable);
    return insert_switch_set(usable, *req.cycle, s, params.search_node_budget, rng);
}

std::optional<RewireResult> second_hamilton_cycle(const RewireRequest& req, const Params& params, Rng& rng,
                                                  std::string* diagnostic) {
    if (!req.host || !req.cycle || !req.desirable) throw PreconditionError("incomplete rewire request");
    const auto& host = *req.host;
    const auto& cycle = *req.cycle;
    const auto n = host.order();
    require_hamilton(cycle, n);
    if (req.desirable->order() != n) throw PreconditionError("desirable graph has a different vertex count");
    for (const auto& e : req.protected_edges) {
        if (!cycle.has_edge(e.u, e.v)) {
            throw PreconditionError("protected edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") is not on the cycle");
        }
    }
    for (const Vertex v : req.bad) {
        if (!host.contains(v)) throw PreconditionError("bad vertex " + std::to_string(v) + " is not in the graph");
    }
    const auto b_prime = bad_closure(req);
    if (b_prime.size() >= n) throw PreconditionError("B ∪ V(E) covers every vertex");
    auto note = [&](const std::string& text) {
        if (diagnostic) *diagnostic = text;
    };

    const auto usable = usable_graph(host, *req.desirable);
    RewireResult result;
    {
        const double bound = rewire_degree_bound(n, b_prime.size());
        std::vector<char> in_b(n, 0);
        for (const Vertex v : b_prime) in_b[static_cast<std::size_t>(v)] = 1;
        for (std::size_t v = 0; v < n; ++v) {
            if (in_b[v] || static_cast<double>(usable.degree(static_cast<Vertex>(v))) >= bound) continue;
            if (!params.relax_degree_bound) {
                throw PreconditionError("vertex " + std::to_string(v) + " has desirable degree " +
                                        std::to_string(usable.degree(static_cast<Vertex>(v))) + " below " +
                                        std::to_string(bound));
            }
            result.degree_bound_relaxed = true;
            break;
        }
    }
    bool any_off_cycle = false;
    for (const auto& e : usable.edges()) {
        if (!cycle.has_edge(e.u, e.v)) {
            any_off_cycle = true;
            break;
        }
    }
    if (!any_off_cycle) {
        note("no desirable edge off the cycle");
        return std::nullopt;
    }

    for (std::size_t attempt = 0; attempt < params.rewire_attempts; ++attempt) {
        auto s = sample_switch_set(usable, cycle, b_prime, params, rng);
        if (!s) continue;
        if (auto next = insert_switch_set(usable, cycle, *s, params.search_node_budget, rng)) {
            result.cycle = std::move(*next);
            result.switch_set = std::move(*s);
            return result;
        }
    }

    if (n > params.exhaustive_cutoff) {
        note("no switch set produced a new cycle within budget");
        return std::nullopt;
    }
    // Small graphs: every admissible S, smallest first, then a plain search.
    const auto a = switch_candidates(cycle, b_prime);
    std::vector<std::vector<Vertex>> sets;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << a.size()); ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<Vertex> s;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (mask >> k & 1U) s.push_back(a[k]);
        if (check_independent_dominating(usable, cycle, s)) sets.push_back(std::move(s));
    }
    std::stable_sort(sets.begin(), sets.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
    for (auto& s : sets) {
        if (auto next = insert_switch_set(usable, cycle, s, params.search_node_budget, rng)) {
            result.cycle = std::move(*next);
            result.switch_set = std::move(s);
            result.exhaustive_fallback = true;
            return result;
        }
    }
    if (auto next = exhaustive_hamilton(usable, cycle, req.protected_edges, params.search_node_budget)) {
        std::vector<Vertex> touched;
        for (const auto& e : next->edge_list()) {
            if (!cycle.has_edge(e.u, e.v)) {
                touched.push_back(e.u);
                touched.push_back(e.v);
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        result.cycle = std::move(*next);
        result.switch_set = std::move(touched);
        result.exhaustive_fallback = true;
        return result;
    }
    note("exhaustive search found no second Hamilton cycle");
    return std::nullopt;
}

}  // namespace twofactor
