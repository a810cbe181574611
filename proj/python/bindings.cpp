#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "twofactor/cycle_cover.hpp"
#include "twofactor/graph.hpp"
#include "twofactor/instances.hpp"
#include "twofactor/orchestrator.hpp"
#include "twofactor/params.hpp"
#include "twofactor/random.hpp"
#include "twofactor/run_stats.hpp"
#include "twofactor/switching.hpp"

namespace py = pybind11;
using namespace twofactor;

namespace {

using PyEdge = std::pair<Vertex, Vertex>;

std::vector<Edge> to_edges(const std::vector<PyEdge>& pairs) {
    std::vector<Edge> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) out.push_back(Edge{a, b});
    return out;
}

std::vector<PyEdge> from_edges(const std::vector<Edge>& edges) {
    std::vector<PyEdge> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.emplace_back(e.u, e.v);
    return out;
}

PyEdge pair_of(const Edge& e) { return {e.u, e.v}; }

// Python callers get the same defaults as the command line tool.
Params resolve_params(const Graph& g, const std::optional<Params>& params, std::uint64_t seed) {
    Params p = params ? *params : Params::for_graph(g);
    p.seed = seed;
    return p;
}

struct PySolveResult {
    SolveReport report;
    std::string stats;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "2-factors with a prescribed number of cycles";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<GraphError>(m, "GraphError", error.ptr());
    py::register_exception<CoverError>(m, "CoverError", error.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());

    py::class_<Graph>(m, "Graph")
        .def(py::init([](std::size_t n, const std::vector<PyEdge>& edges) { return Graph(n, to_edges(edges)); }),
             py::arg("n"), py::arg("edges"))
        .def_static("complete", &Graph::complete, py::arg("n"))
        .def_static("cycle", &Graph::cycle, py::arg("n"))
        .def_property_readonly("order", &Graph::order)
        .def_property_readonly("size", &Graph::size)
        .def_property_readonly("min_degree", &Graph::min_degree)
        .def_property_readonly("edges", [](const Graph& g) { return from_edges(g.edges()); })
        .def("neighbors",
             [](const Graph& g, Vertex v) {
                 if (!g.contains(v)) throw py::index_error("vertex out of range");
                 auto nb = g.neighbors(v);
                 return std::vector<Vertex>(nb.begin(), nb.end());
             })
        .def("degree",
             [](const Graph& g, Vertex v) {
                 if (!g.contains(v)) throw py::index_error("vertex out of range");
                 return g.degree(v);
             })
        .def("has_edge", &Graph::has_edge)
        .def("common_neighbor_count", &Graph::common_neighbor_count)
        .def("__len__", &Graph::order)
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.order()) + " m=" + std::to_string(g.size()) + ">";
        });

    m.def("parse_graph", [](const std::string& text) { return parse_graph(text); });
    m.def("format_graph", &format_graph);
    m.def("load_graph", &load_graph);
    m.def("save_graph", &save_graph);

    py::class_<CycleCover>(m, "CycleCover")
        .def(py::init<std::size_t, std::vector<Cycle>>(), py::arg("n"), py::arg("cycles"))
        .def_static("hamilton", &CycleCover::hamilton, py::arg("order"))
        .def_property_readonly("order", &CycleCover::order)
        .def_property_readonly("components", &CycleCover::components)
        .def_property_readonly("cycles", &CycleCover::cycles)
        .def_property_readonly("edges", [](const CycleCover& c) { return from_edges(c.edge_list()); })
        .def("has_edge", &CycleCover::has_edge)
        .def("successor", &CycleCover::successor)
        .def("predecessor", &CycleCover::predecessor)
        .def(py::self == py::self)
        .def("__len__", &CycleCover::components)
        .def("__repr__", [](const CycleCover& c) {
            return "<CycleCover n=" + std::to_string(c.order()) + " cycles=" + std::to_string(c.components()) + ">";
        });

    m.def("parse_cover", [](const std::string& text, std::size_t n) { return parse_cover(text, n); });
    m.def("format_cover", &format_cover);
    m.def("load_cover", &load_cover);
    m.def("save_cover", &save_cover);
    m.def("validate_cover", &validate_cover, "Component count, or CoverError naming the first violation.");
    m.def("symmetric_difference_size", &symmetric_difference_size);

    py::class_<Params>(m, "Params")
        .def(py::init<>())
        .def_static("for_graph", &Params::for_graph, py::arg("graph"), py::arg("eta") = 0.9)
        .def_readwrite("common_nbr_threshold", &Params::common_nbr_threshold)
        .def_readwrite("mset_threshold", &Params::mset_threshold)
        .def_readwrite("coverage_slack", &Params::coverage_slack)
        .def_readwrite("set_count_cap", &Params::set_count_cap)
        .def_readwrite("good_set_size_cap", &Params::good_set_size_cap)
        .def_readwrite("overflow_cap", &Params::overflow_cap)
        .def_readwrite("growth_per_edge", &Params::growth_per_edge)
        .def_readwrite("close_index_threshold", &Params::close_index_threshold)
        .def_readwrite("cover_nbr_threshold", &Params::cover_nbr_threshold)
        .def_readwrite("zeta", &Params::zeta)
        .def_readwrite("h_edge_target", &Params::h_edge_target)
        .def_readwrite("protected_cap", &Params::protected_cap)
        .def_readwrite("sample_probability", &Params::sample_probability)
        .def_readwrite("relax_degree_bound", &Params::relax_degree_bound)
        .def_readwrite("full_domination", &Params::full_domination)
        .def_readwrite("witness_set_size", &Params::witness_set_size)
        .def_readwrite("colour_size", &Params::colour_size)
        .def_readwrite("min_colour_class", &Params::min_colour_class)
        .def_readwrite("sample_retries", &Params::sample_retries)
        .def_readwrite("rewire_attempts", &Params::rewire_attempts)
        .def_readwrite("enrich_iterations", &Params::enrich_iterations)
        .def_readwrite("enumeration_cap", &Params::enumeration_cap)
        .def_readwrite("search_node_budget", &Params::search_node_budget)
        .def_readwrite("exhaustive_cutoff", &Params::exhaustive_cutoff)
        .def_readwrite("partition_retries", &Params::partition_retries)
        .def_readwrite("seed", &Params::seed)
        .def("check", &Params::check)
        .def("apply", [](Params& p, const std::string& text) { apply_params_text(p, text); },
             "Applies \"key = value\" lines.")
        .def("__str__", [](const Params& p) { return format_params(p); });

    m.def("param_names", &param_names);

    py::class_<ImplantedC4>(m, "ImplantedC4")
        .def_property_readonly("first", [](const ImplantedC4& c) { return PyEdge{c.first.tail, c.first.head}; })
        .def_property_readonly("second", [](const ImplantedC4& c) { return PyEdge{c.second.tail, c.second.head}; })
        .def_property_readonly("chords", [](const ImplantedC4& c) {
            return std::make_pair(pair_of(c.chord_a), pair_of(c.chord_b));
        })
        .def_readonly("aligned", &ImplantedC4::aligned)
        .def_property_readonly("kind", [](const ImplantedC4& c) { return std::string(to_string(c.kind)); })
        .def_property_readonly("delta", [](const ImplantedC4& c) { return component_delta(c.kind); });

    m.def("enumerate_implanted", &enumerate_implanted, py::arg("graph"), py::arg("cover"),
          py::arg("cap") = std::size_t{1} << 22);
    m.def("count_h_edges", &count_h_edges);
    m.def("apply_switch", &apply_switch);

    m.def(
        "increase_by_one",
        [](const Graph& g, const CycleCover& cover, std::optional<Params> params,
           std::uint64_t seed) -> std::optional<CycleCover> {
            const auto p = resolve_params(g, params, seed);
            auto rng = make_rng(seed);
            auto r = increase_by_one(g, cover, p, rng);
            if (!r) return std::nullopt;
            return r->cover;
        },
        py::arg("graph"), py::arg("cover"), py::arg("params") = py::none(), py::arg("seed") = 1,
        "Cover with one more cycle, or None.");

    m.def(
        "split_to_k",
        [](const Graph& g, const CycleCover& cover, std::size_t k, std::optional<Params> params,
           std::uint64_t seed) -> std::optional<CycleCover> {
            const auto p = resolve_params(g, params, seed);
            auto rng = make_rng(seed);
            return split_to_k(g, cover, k, p, rng).cover;
        },
        py::arg("graph"), py::arg("cover"), py::arg("k"), py::arg("params") = py::none(), py::arg("seed") = 1);

    py::class_<PySolveResult>(m, "SolveResult")
        .def_property_readonly("cover", [](const PySolveResult& r) { return r.report.cover; })
        .def_property_readonly("success", [](const PySolveResult& r) { return r.report.cover.has_value(); })
        .def_property_readonly("route", [](const PySolveResult& r) { return r.report.route; })
        .def_property_readonly("initial_components", [](const PySolveResult& r) { return r.report.initial_components; })
        .def_property_readonly("diagnostic", [](const PySolveResult& r) { return r.report.diagnostic; })
        .def_property_readonly("switch_count", [](const PySolveResult& r) {
            std::size_t total = 0;
            for (const auto& plan : r.report.switch_log) total += plan.switches.size();
            return total;
        })
        .def_property_readonly("stats_json", [](const PySolveResult& r) { return r.stats; })
        .def("__bool__", [](const PySolveResult& r) { return r.report.cover.has_value(); });

    m.def(
        "solve",
        [](const Graph& g, const CycleCover& cover, std::size_t k, std::optional<Params> params,
           std::uint64_t seed, bool strict) {
            const auto p = resolve_params(g, params, seed);
            p.check();
            auto rng = make_rng(seed);
            PySolveResult out;
            {
                py::gil_scoped_release release;
                out.report = solve(g, cover, k, p, rng, strict);
            }
            RunContext ctx;
            ctx.seed = seed;
            ctx.strict = strict;
            out.stats = run_stats_json(g, cover, out.report, ctx);
            return out;
        },
        py::arg("graph"), py::arg("cover"), py::arg("k"), py::arg("params") = py::none(), py::arg("seed") = 1,
        py::arg("strict") = false);

    py::class_<Instance>(m, "Instance")
        .def_readonly("graph", &Instance::graph)
        .def_readonly("cover", &Instance::cover)
        .def_property_readonly("spec_json", [](const Instance& i) { return instance_spec_json(i.spec); });

    m.def("gen_planted", &gen_planted, py::arg("n"), py::arg("p"), py::arg("seed") = 1);
    m.def("gen_cliques_matching", &gen_cliques_matching, py::arg("q"), py::arg("seed") = 1,
          py::arg("allow_even") = false);
    m.def("gen_triangles_biclique", &gen_triangles_biclique, py::arg("k"), py::arg("m"), py::arg("seed") = 1);

    m.def("oracle_exists_k_factor", &oracle_exists_k_factor, py::arg("graph"), py::arg("k"));
    m.def("count_implanted_bruteforce", &count_implanted_bruteforce);
    m.attr("FACTOR_ORACLE_CAP") = kFactorOracleCap;
    m.attr("IMPLANTED_ORACLE_CAP") = kImplantedOracleCap;
}
