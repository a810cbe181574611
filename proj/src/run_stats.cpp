#include "twofactor/run_stats.hpp"

#include <json.hpp>

namespace twofactor {

namespace {

using Json = nlohmann::ordered_json;

Json edge_json(const Edge& e) { return Json::array({e.u, e.v}); }

Json edges_json(const std::vector<Edge>& edges) {
    Json out = Json::array();
    for (const auto& e : edges) out.push_back(edge_json(e));
    return out;
}

Json plan_json(const SwitchPlan& plan) {
    Json moves = Json::array();
    for (const auto& c4 : plan.switches) {
        Json m;
        m["kind"] = to_string(c4.kind);
        m["first"] = Json::array({c4.first.cycle, c4.first.pos});
        m["second"] = Json::array({c4.second.cycle, c4.second.pos});
        m["chords"] = Json::array({edge_json(c4.chord_a), edge_json(c4.chord_b)});
        moves.push_back(std::move(m));
    }
    Json j;
    j["case"] = plan.split_case;
    j["delta"] = plan.predicted_delta;
    j["difference"] = plan.predicted_difference;
    j["switches"] = std::move(moves);
    return j;
}

}  // namespace

long long switch_log_delta(const SolveReport& report) {
    long long total = 0;
    for (const auto& plan : report.switch_log) total += plan.predicted_delta;
    return total;
}

std::string run_stats_json(const Graph& g, const CycleCover& input, const SolveReport& report,
                           const RunContext& context) {
    Json j;
    j["n"] = g.order();
    j["m"] = g.size();
    j["min_degree"] = g.min_degree();
    j["initial_components"] = report.initial_components;
    j["k"] = report.target;
    j["seed"] = context.seed;
    j["strict"] = context.strict;
    j["success"] = report.cover.has_value();
    j["route"] = report.route;
    if (report.cover) {
        j["components"] = report.cover->components();
        j["symmetric_difference"] = symmetric_difference_size(input, *report.cover);
    }
    j["h_edges_input"] = count_h_edges(g, input);
    if (report.merge) {
        Json m;
        m["removed"] = edges_json(report.merge->removed);
        m["added"] = edges_json(report.merge->added);
        m["added_new_to_graph"] = edges_json(report.merge->added_new_to_graph);
        j["merge"] = std::move(m);
    }
    if (report.enrichment) {
        const auto& e = *report.enrichment;
        Json en;
        en["parts"] = e.parts;
        en["h_edges_before"] = e.h_before;
        en["h_edges_after"] = e.h_after;
        en["target_met"] = e.target_met;
        en["thomassen_calls"] = e.thomassen_calls;
        en["accepted"] = e.accepted;
        en["rejected"] = e.rejected;
        en["fallback_rounds"] = e.fallback_rounds;
        en["note"] = e.note;
        Json ledger;
        ledger["sum_t"] = e.ledger.sum_t();
        ledger["sum_m"] = e.ledger.sum_m();
        ledger["protected_edges"] = e.ledger.protected_edges().size();
        en["ledger"] = std::move(ledger);
        Json trace = Json::array();
        for (const auto& p : e.potential_trace) trace.push_back(Json::array({p[0], p[1], p[2]}));
        en["potential_trace"] = std::move(trace);
        j["enrichment"] = std::move(en);
        j["components_after_unmerge"] = report.components_after_unmerge;
        j["h_edges_after_unmerge"] = report.h_after_unmerge;
        j["unmerge_audit_ok"] = report.unmerge_audit_ok;
    }
    Json log = Json::array();
    for (const auto& plan : report.switch_log) log.push_back(plan_json(plan));
    j["switch_log"] = std::move(log);
    j["switch_delta_total"] = switch_log_delta(report);
    if (!report.diagnostic.empty()) j["diagnostic"] = report.diagnostic;
    if (context.wall_seconds) j["wall_seconds"] = *context.wall_seconds;
    return j.dump(2) + "\n";
}

}  // namespace twofactor
