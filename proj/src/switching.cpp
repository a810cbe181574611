#include "twofactor/switching.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "twofactor/patterns.hpp"

namespace twofactor {

const char* to_string(SwitchKind kind) {
    switch (kind) {
        case SwitchKind::SameCycleParallel: return "same_cycle_parallel";
        case SwitchKind::SameCycleCrossing: return "same_cycle_crossing";
        case SwitchKind::CrossCycle: return "cross_cycle";
    }
    return "unknown";
}

int component_delta(SwitchKind kind) {
    switch (kind) {
        case SwitchKind::SameCycleParallel: return 1;
        case SwitchKind::SameCycleCrossing: return 0;
        case SwitchKind::CrossCycle: return -1;
    }
    return 0;
}

CoverEdgeRef edge_ref(const CycleCover& cover, std::size_t cycle, std::size_t pos) {
    const auto& cyc = cover.cycle(cycle);
    return {cycle, pos, cyc[pos], cyc[(pos + 1) % cyc.size()]};
}

std::optional<ImplantedC4> implanted_between(const Graph& g, const CycleCover& cover,
                                             CoverEdgeRef first, CoverEdgeRef second, bool aligned) {
    const Vertex a = first.tail, b = first.head;
    const Vertex c = aligned ? second.tail : second.head;
    const Vertex d = aligned ? second.head : second.tail;
    if (a == c || a == d || b == c || b == d) return std::nullopt;
    if (!g.has_edge(a, c) || !g.has_edge(b, d)) return std::nullopt;
    if (cover.has_edge(a, c) || cover.has_edge(b, d)) return std::nullopt;
    if (!cover.has_edge(first.tail, first.head) || !cover.has_edge(second.tail, second.head)) return std::nullopt;
    ImplantedC4 c4{first, second, make_edge(a, c), make_edge(b, d), aligned, SwitchKind::CrossCycle};
    if (first.cycle == second.cycle) {
        c4.kind = aligned ? SwitchKind::SameCycleCrossing : SwitchKind::SameCycleParallel;
    }
    return c4;
}

namespace {

struct Candidate {
    std::size_t fid;
    bool aligned;
    CoverEdgeRef f;
};

// Implanted C4's through cover edge (c, pos) found from the chord at its
// tail. With `later_only`, only partners with a larger edge id are kept.
void candidates_at(const Graph& g, const CycleCover& cover, std::size_t c, std::size_t pos,
                   bool later_only, std::vector<Candidate>& out) {
    out.clear();
    const auto e = edge_ref(cover, c, pos);
    const auto eid = cover.edge_id(c, pos);
    const Vertex t = e.tail, h = e.head;
    const Vertex before = cover.predecessor(t);
    for (const Vertex w : g.neighbors(t)) {
        if (w == h || w == before) continue;
        const auto& sw = cover.slot(w);
        {
            const auto fid = cover.edge_id(sw.cycle, sw.pos);
            const Vertex next = cover.successor(w);
            if ((!later_only || fid > eid) && fid != eid && next != t && next != h &&
                g.has_edge(h, next) && !cover.has_edge(h, next)) {
                out.push_back({fid, true, edge_ref(cover, sw.cycle, sw.pos)});
            }
        }
        {
            const Vertex prev = cover.predecessor(w);
            const auto& sp = cover.slot(prev);
            const auto fid = cover.edge_id(sp.cycle, sp.pos);
            if ((!later_only || fid > eid) && fid != eid && prev != t && prev != h &&
                g.has_edge(h, prev) && !cover.has_edge(h, prev)) {
                out.push_back({fid, false, edge_ref(cover, sp.cycle, sp.pos)});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
        return std::tie(x.fid, x.aligned) < std::tie(y.fid, y.aligned);
    });
}

ImplantedC4 build(const CoverEdgeRef& e, const Candidate& cand) {
    const Vertex c = cand.aligned ? cand.f.tail : cand.f.head;
    const Vertex d = cand.aligned ? cand.f.head : cand.f.tail;
    ImplantedC4 c4{e, cand.f, make_edge(e.tail, c), make_edge(e.head, d), cand.aligned, SwitchKind::CrossCycle};
    if (e.cycle == cand.f.cycle) {
        c4.kind = cand.aligned ? SwitchKind::SameCycleCrossing : SwitchKind::SameCycleParallel;
    }
    return c4;
}

}  // namespace

void for_each_implanted(const Graph& g, const CycleCover& cover,
                        const std::function<bool(const ImplantedC4&)>& visit) {
    std::vector<Candidate> cands;
    for (std::size_t c = 0; c < cover.components(); ++c) {
        for (std::size_t p = 0; p < cover.cycle(c).size(); ++p) {
            candidates_at(g, cover, c, p, true, cands);
            const auto e = edge_ref(cover, c, p);
            for (const auto& cand : cands) {
                if (!visit(build(e, cand))) return;
            }
        }
    }
}

std::vector<ImplantedC4> enumerate_implanted(const Graph& g, const CycleCover& cover, std::size_t cap) {
    std::vector<ImplantedC4> out;
    if (cap == 0) return out;
    for_each_implanted(g, cover, [&](const ImplantedC4& c4) {
        out.push_back(c4);
        return out.size() < cap;
    });
    return out;
}

std::size_t count_h_edges(const Graph& g, const CycleCover& cover) {
    std::size_t total = 0;
    std::vector<Candidate> cands;
    for (std::size_t c = 0; c < cover.components(); ++c) {
        for (std::size_t p = 0; p < cover.cycle(c).size(); ++p) {
            candidates_at(g, cover, c, p, true, cands);
            total += cands.size();
        }
    }
    return total;
}

HGraphView::HGraphView(const Graph& g, const CycleCover& cover)
    : g_(&g), cover_(&cover), degree_(cover.edge_count(), 0), known_(cover.edge_count(), 0) {
    edge_pos_.reserve(cover.edge_count());
    for (std::size_t c = 0; c < cover.components(); ++c)
        for (std::size_t p = 0; p < cover.cycle(c).size(); ++p) edge_pos_.emplace_back(c, p);
}

std::size_t HGraphView::degree(std::size_t edge_id) const {
    if (!known_[edge_id]) {
        std::vector<Candidate> cands;
        const auto [c, p] = edge_pos_[edge_id];
        candidates_at(*g_, *cover_, c, p, false, cands);
        degree_[edge_id] = cands.size();
        known_[edge_id] = 1;
    }
    return degree_[edge_id];
}

std::size_t HGraphView::total() const {
    if (!total_) total_ = count_h_edges(*g_, *cover_);
    return *total_;
}

std::vector<ImplantedC4> HGraphView::incident(std::size_t edge_id) const {
    std::vector<Candidate> cands;
    const auto [c, p] = edge_pos_[edge_id];
    candidates_at(*g_, *cover_, c, p, false, cands);
    const auto e = edge_ref(*cover_, c, p);
    std::vector<ImplantedC4> out;
    for (const auto& cand : cands) {
        if (cand.fid > edge_id) {
            out.push_back(build(e, cand));
        } else {
            auto c4 = implanted_between(*g_, *cover_, cand.f, e, cand.aligned);
            if (c4) out.push_back(*c4);
        }
    }
    return out;
}

CycleCover apply_switch(const CycleCover& cover, const ImplantedC4& c4) {
    for (const auto* ref : {&c4.first, &c4.second}) {
        if (ref->cycle >= cover.components() || ref->pos >= cover.cycle(ref->cycle).size() ||
            edge_ref(cover, ref->cycle, ref->pos) != *ref) {
            throw CoverError("switch refers to a cover edge that is not in the cover");
        }
    }
    const Vertex c = c4.aligned ? c4.second.tail : c4.second.head;
    const Vertex d = c4.aligned ? c4.second.head : c4.second.tail;
    if (c4.chord_a != make_edge(c4.first.tail, c) || c4.chord_b != make_edge(c4.first.head, d)) {
        throw CoverError("switch chords do not match its cover edges");
    }
    if (incident(make_edge(c4.first.tail, c4.first.head), make_edge(c4.second.tail, c4.second.head))) {
        throw CoverError("switch cover edges are incident");
    }
    const Edge removed[] = {make_edge(c4.first.tail, c4.first.head), make_edge(c4.second.tail, c4.second.head)};
    const Edge added[] = {c4.chord_a, c4.chord_b};
    return exchange_edges(cover, removed, added);
}

namespace {

void collect_edges(const SwitchPlan& plan, std::vector<Edge>& removed, std::vector<Edge>& added) {
    for (const auto& s : plan.switches) {
        removed.push_back(make_edge(s.first.tail, s.first.head));
        removed.push_back(make_edge(s.second.tail, s.second.head));
        added.push_back(s.chord_a);
        added.push_back(s.chord_b);
    }
}

}  // namespace

CycleCover apply_plan(const CycleCover& cover, const SwitchPlan& plan) {
    std::vector<Edge> removed, added;
    collect_edges(plan, removed, added);
    return exchange_edges(cover, removed, added);
}

namespace {

class IncreaseSearch {
public:
    IncreaseSearch(const Graph& g, const CycleCover& cover, const Params& params, Rng& rng)
        : g_(g), cover_(cover), params_(params), rng_(rng) {}

    std::optional<IncreaseResult> run(std::string* diagnostic) {
        if (auto r = case_parallel()) return r;
        collect();
        if (auto r = case_interleaved()) return r;
        if (auto r = case_chain(3)) return r;
        if (auto r = case_chain(4)) return r;
        if (diagnostic) {
            *diagnostic = "no configuration found: " + std::to_string(implanted_) +
                          " implanted C4's (" + std::to_string(crossing_total_) + " same-cycle crossing, " +
                          std::to_string(cross_total_) + " cross-cycle over " +
                          std::to_string(cross_.size()) + " cycle pairs), no parallel switch" +
                          (truncated_ ? ", enumeration truncated at cap" : "");
        }
        return std::nullopt;
    }

private:
    struct PairLists {
        std::vector<IndexPair> red;
        std::vector<IndexPair> blue;
        std::size_t mass = 0;
    };

    std::optional<IncreaseResult> attempt(std::vector<ImplantedC4> switches, int split_case) {
        SwitchPlan plan;
        plan.switches = std::move(switches);
        plan.split_case = split_case;
        plan.predicted_delta = 1;
        plan.predicted_difference = 4 * plan.switches.size();
        std::vector<Edge> removed, added;
        collect_edges(plan, removed, added);
        try {
            auto next = exchange_edges(cover_, removed, added);
            if (next.components() != cover_.components() + 1) return std::nullopt;
            if (symmetric_difference_size(next, cover_) != plan.predicted_difference) return std::nullopt;
            return IncreaseResult{std::move(next), std::move(plan)};
        } catch (const CoverError&) {
            return std::nullopt;
        }
    }

    std::optional<IncreaseResult> case_parallel() {
        for (std::size_t c = 0; c < cover_.components(); ++c) {
            const auto& cyc = cover_.cycle(c);
            const auto len = cyc.size();
            if (len < 6) continue;
            for (std::size_t a = 0; a < len; ++a) {
                const Vertex t = cyc[a];
                const Vertex h = cyc[(a + 1) % len];
                std::optional<std::size_t> best;
                for (const Vertex w : g_.neighbors(t)) {
                    const auto& sw = cover_.slot(w);
                    if (sw.cycle != c) continue;
                    const std::size_t b = (sw.pos + len - 1) % len;
                    if (b < a + 3 || b + 1 == len + a) continue;
                    if (best && b >= *best) continue;
                    const Vertex xb = cyc[b];
                    if (cover_.has_edge(t, w) || !g_.has_edge(h, xb) || cover_.has_edge(h, xb)) continue;
                    best = b;
                }
                if (!best) continue;
                auto c4 = implanted_between(g_, cover_, edge_ref(cover_, c, a), edge_ref(cover_, c, *best), false);
                if (c4) {
                    if (auto r = attempt({*c4}, 1)) return r;
                }
            }
        }
        return std::nullopt;
    }

    void collect() {
        for_each_implanted(g_, cover_, [&](const ImplantedC4& c4) {
            ++implanted_;
            if (c4.kind == SwitchKind::SameCycleCrossing) {
                same_[c4.first.cycle].push_back(
                    {static_cast<long long>(c4.first.pos), static_cast<long long>(c4.second.pos)});
                ++crossing_total_;
            } else if (c4.kind == SwitchKind::CrossCycle) {
                auto& lists = cross_[{c4.first.cycle, c4.second.cycle}];
                const IndexPair p{static_cast<long long>(c4.first.pos), static_cast<long long>(c4.second.pos)};
                (c4.aligned ? lists.red : lists.blue).push_back(p);
                ++lists.mass;
                ++cross_total_;
            }
            if (implanted_ >= params_.enumeration_cap) {
                truncated_ = true;
                return false;
            }
            return true;
        });
        for (auto& [c, list] : same_) std::sort(list.begin(), list.end(), by_position);
        for (auto& [key, lists] : cross_) {
            std::sort(lists.red.begin(), lists.red.end(), by_position);
            std::sort(lists.blue.begin(), lists.blue.end(), by_position);
        }
    }

    static bool by_position(const IndexPair& x, const IndexPair& y) {
        return std::tie(x.i, x.j) < std::tie(y.i, y.j);
    }

    std::optional<IncreaseResult> case_interleaved() {
        for (const auto& [c, list] : same_) {
            auto make = [&, c = c](const IndexPair& p) {
                return implanted_between(g_, cover_, edge_ref(cover_, c, static_cast<std::size_t>(p.i)),
                                         edge_ref(cover_, c, static_cast<std::size_t>(p.j)), true);
            };
            auto try_pair = [&](const IndexPair& p, const IndexPair& q) -> std::optional<IncreaseResult> {
                auto s = make(p);
                auto t = make(q);
                if (!s || !t) return std::nullopt;
                return attempt({*s, *t}, 2);
            };
            auto valid = [](const IndexPair& p, const IndexPair& q) {
                return p.i < q.i && q.i < p.j && p.j < q.j;
            };
            // Fast finder first; coincident chords make it return unusable
            // pairs, so fall back to an ordered scan or to pruning.
            if (auto found = find_interleaved_pair(list)) {
                if (auto r = try_pair(list[(*found)[0]], list[(*found)[1]])) return r;
            } else {
                continue;
            }
            if (list.size() <= kPairScanLimit) {
                for (std::size_t x = 0; x < list.size(); ++x)
                    for (std::size_t y = x + 1; y < list.size(); ++y)
                        if (valid(list[x], list[y])) {
                            if (auto r = try_pair(list[x], list[y])) return r;
                        }
                continue;
            }
            auto work = list;
            for (int round = 0; round < kPruneRounds; ++round) {
                auto found = find_interleaved_pair(work);
                if (!found) break;
                if (auto r = try_pair(work[(*found)[0]], work[(*found)[1]])) return r;
                const auto drop = (*found)[uniform_below(rng_, 2)];
                work.erase(work.begin() + static_cast<std::ptrdiff_t>(drop));
            }
        }
        return std::nullopt;
    }

    // split_case 3: aligned cross-cycle pairs increasing in both positions;
    // split_case 4: unaligned pairs, i increasing and j decreasing.
    std::optional<IncreaseResult> case_chain(int split_case) {
        std::vector<std::pair<std::size_t, std::size_t>> order;
        for (const auto& [key, lists] : cross_) order.push_back(key);
        std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
            return cross_.at(x).mass > cross_.at(y).mass;
        });
        const bool red = split_case == 3;
        for (const auto& key : order) {
            const auto& list = red ? cross_.at(key).red : cross_.at(key).blue;
            if (list.size() < 3) continue;
            auto make = [&](const IndexPair& p) {
                return implanted_between(g_, cover_, edge_ref(cover_, key.first, static_cast<std::size_t>(p.i)),
                                         edge_ref(cover_, key.second, static_cast<std::size_t>(p.j)), red);
            };
            auto try_triple = [&](const IndexPair& p, const IndexPair& q,
                                  const IndexPair& r) -> std::optional<IncreaseResult> {
                auto a = make(p), b = make(q), c = make(r);
                if (!a || !b || !c) return std::nullopt;
                return attempt({*a, *b, *c}, split_case);
            };
            auto finder = [&](const std::vector<IndexPair>& l) {
                return red ? find_increasing_triple(l) : find_decreasing_triple(l);
            };
            auto valid = [&](const IndexPair& p, const IndexPair& q, const IndexPair& r) {
                if (!(p.i < q.i && q.i < r.i)) return false;
                return red ? (p.j < q.j && q.j < r.j) : (p.j > q.j && q.j > r.j);
            };
            if (auto found = finder(list)) {
                if (auto r = try_triple(list[(*found)[0]], list[(*found)[1]], list[(*found)[2]])) return r;
            } else {
                continue;
            }
            if (list.size() <= kTripleScanLimit) {
                for (std::size_t x = 0; x < list.size(); ++x)
                    for (std::size_t y = x + 1; y < list.size(); ++y) {
                        if (list[x].i >= list[y].i) continue;
                        for (std::size_t z = y + 1; z < list.size(); ++z)
                            if (valid(list[x], list[y], list[z])) {
                                if (auto r = try_triple(list[x], list[y], list[z])) return r;
                            }
                    }
                continue;
            }
            auto work = list;
            for (int round = 0; round < kPruneRounds; ++round) {
                auto found = finder(work);
                if (!found) break;
                if (auto r = try_triple(work[(*found)[0]], work[(*found)[1]], work[(*found)[2]])) return r;
                const auto drop = (*found)[uniform_below(rng_, 3)];
                work.erase(work.begin() + static_cast<std::ptrdiff_t>(drop));
            }
        }
        return std::nullopt;
    }

    static constexpr std::size_t kPairScanLimit = 3000;
    static constexpr std::size_t kTripleScanLimit = 150;
    static constexpr int kPruneRounds = 64;

    const Graph& g_;
    const CycleCover& cover_;
    const Params& params_;
    Rng& rng_;
    std::map<std::size_t, std::vector<IndexPair>> same_;
    std::map<std::pair<std::size_t, std::size_t>, PairLists> cross_;
    std::size_t implanted_ = 0;
    std::size_t crossing_total_ = 0;
    std::size_t cross_total_ = 0;
    bool truncated_ = false;
};

}  // namespace

std::optional<IncreaseResult> increase_by_one(const Graph& g, const CycleCover& cover, const Params& params,
                                              Rng& rng, std::string* diagnostic) {
    IncreaseSearch search(g, cover, params, rng);
    return search.run(diagnostic);
}

std::optional<IncreaseResult> increase_by_one(const Graph& g, const CycleCover& cover) {
    Params params;
    auto rng = make_rng(params.seed);
    return increase_by_one(g, cover, params, rng);
}

SplitOutcome split_to_k(const Graph& g, const CycleCover& cover, std::size_t k, const Params& params,
                        Rng& rng) {
    if (k < cover.components()) {
        throw PreconditionError("target k=" + std::to_string(k) + " is below the cover's " +
                                std::to_string(cover.components()) +
                                " cycles; switching only splits cycles, merging is not supported");
    }
    if (3 * k > cover.order()) {
        throw PreconditionError("target k=" + std::to_string(k) + " exceeds n/3 for n=" +
                                std::to_string(cover.order()));
    }
    SplitOutcome out;
    CycleCover current = cover;
    while (current.components() < k) {
        std::string why;
        auto step = increase_by_one(g, current, params, rng, &why);
        if (!step) {
            out.diagnostic = "stuck at " + std::to_string(current.components()) + " cycles: " + why;
            return out;
        }
        out.log.push_back(std::move(step->plan));
        current = std::move(step->cover);
    }
    out.cover = std::move(current);
    return out;
}

SplitOutcome split_to_k(const Graph& g, const CycleCover& cover, std::size_t k) {
    Params params;
    auto rng = make_rng(params.seed);
    return split_to_k(g, cover, k, params, rng);
}

}  // namespace twofactor
