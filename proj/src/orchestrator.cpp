#include "twofactor/orchestrator.hpp"

#include <algorithm>
#include <numeric>

namespace twofactor {

namespace {

// Positions of cycle c ordered by preference for removal.
std::vector<std::size_t> ranked_positions(const Graph& g, const CycleCover& cover, std::size_t c, Rng* rng) {
    const auto len = cover.cycle(c).size();
    std::vector<std::size_t> pos(len);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    if (rng != nullptr) {
        shuffle(pos, *rng);
        return pos;
    }
    auto weight = [&](std::size_t p) {
        const Edge e = cover.cover_edge(c, p);
        return g.degree(e.u) + g.degree(e.v);
    };
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
        const auto wa = weight(a), wb = weight(b);
        if (wa != wb) return wa > wb;
        return cover.cover_edge(c, a) < cover.cover_edge(c, b);
    });
    return pos;
}

}  // namespace

MergeResult merge_cover(const Graph& g, const CycleCover& cover, Rng* rng) {
    validate_cover(g, cover);
    const auto l = cover.components();
    MergeRecord rec;
    rec.original_components = l;
    // For cycle i: entry side (x,y) joins cycle i-1, exit side (z,w) joins i+1.
    std::vector<CoverEdgeRef> entry(l), exit(l);
    for (std::size_t c = 0; c < l; ++c) {
        const auto order = ranked_positions(g, cover, c, rng);
        if (c > 0) entry[c] = edge_ref(cover, c, order[0]);
        if (c + 1 < l) exit[c] = edge_ref(cover, c, order[c > 0 ? 1 : 0]);
    }
    for (std::size_t c = 0; c + 1 < l; ++c) {
        const auto& zw = exit[c];
        const auto& xy = entry[c + 1];
        rec.removed.push_back(make_edge(zw.tail, zw.head));
        rec.removed.push_back(make_edge(xy.tail, xy.head));
        rec.added.push_back(make_edge(zw.tail, xy.tail));
        rec.added.push_back(make_edge(zw.head, xy.head));
        for (const Vertex v : {zw.tail, zw.head, xy.tail, xy.head}) rec.touched.push_back(v);
    }
    std::sort(rec.touched.begin(), rec.touched.end());
    rec.touched.erase(std::unique(rec.touched.begin(), rec.touched.end()), rec.touched.end());
    for (const auto& e : rec.added)
        if (!g.has_edge(e.u, e.v)) rec.added_new_to_graph.push_back(e);

    MergeResult out{with_edges(g, rec.added), exchange_edges(cover, rec.removed, rec.added), rec, {}};
    for (const auto& e : out.hamilton.edge_list())
        for (const Vertex v : out.record.touched)
            if (touches(e, v)) {
                out.protected_edges.push_back(e);
                break;
            }
    return out;
}

CycleCover unmerge(const CycleCover& cycle, const MergeRecord& record) {
    for (const auto& e : record.added) {
        if (!cycle.has_edge(e.u, e.v)) {
            throw PreconditionError("bridge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") is not on the cycle");
        }
    }
    return exchange_edges(cycle, record.added, record.removed);
}

SolveReport solve(const Graph& g, const CycleCover& cover, std::size_t k, const Params& params, Rng& rng,
                  bool strict) {
    try {
        validate_cover(g, cover);
    } catch (const CoverError& e) {
        throw PreconditionError(std::string("invalid cover: ") + e.what());
    }
    const auto n = g.order();
    const auto l = cover.components();
    if (k < l) {
        throw PreconditionError("target " + std::to_string(k) + " is below the cover's " + std::to_string(l) +
                                " cycles; switching only splits cycles, merging is not supported");
    }
    if (3 * k > n) throw PreconditionError("target " + std::to_string(k) + " exceeds n/3");

    SolveReport report;
    report.initial_components = l;
    report.target = k;
    if (l == k) {
        report.route = "unchanged";
        report.cover = cover;
        report.split_from = cover;
        return report;
    }
    if (!strict) {
        report.split_from = cover;
        auto direct = split_to_k(g, cover, k, params, rng);
        if (direct.cover) {
            report.route = "direct";
            report.cover = std::move(direct.cover);
            report.switch_log = std::move(direct.log);
            return report;
        }
    }

    report.route = "pipeline";
    auto merged = merge_cover(g, cover);
    report.merge = merged.record;
    Params inner = params;
    inner.protected_cap = std::max(inner.protected_cap, merged.protected_edges.size());
    auto enriched = enrich(merged.augmented, merged.hamilton, merged.protected_edges, inner, rng);
    const auto h_enriched = count_h_edges(merged.augmented, enriched.cycle);
    CycleCover back;
    try {
        back = unmerge(enriched.cycle, merged.record);
        validate_cover(g, back);
    } catch (const Error& e) {
        report.enrichment = std::move(enriched);
        report.diagnostic = std::string("unmerge failed: ") + e.what();
        return report;
    }
    report.enrichment = std::move(enriched);
    report.components_after_unmerge = back.components();
    report.h_after_unmerge = count_h_edges(g, back);
    const auto slack = 2 * (l - 1) * n;
    report.unmerge_audit_ok = report.h_after_unmerge + slack >= h_enriched;

    report.split_from = back;
    auto split = split_to_k(g, back, k, params, rng);
    report.switch_log = std::move(split.log);
    if (split.cover) {
        report.cover = std::move(split.cover);
    } else {
        report.diagnostic = split.diagnostic.empty() ? "no further split found" : split.diagnostic;
        if (!report.enrichment->note.empty()) report.diagnostic += "; enrichment: " + report.enrichment->note;
    }
    return report;
}

}  // namespace twofactor
