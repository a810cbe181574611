#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>

#include "twofactor/cycle_cover.hpp"
#include "twofactor/graph.hpp"
#include "twofactor/instances.hpp"
#include "twofactor/orchestrator.hpp"
#include "twofactor/params.hpp"
#include "twofactor/run_stats.hpp"

using namespace twofactor;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kSolverFailure = 2;

struct GenOptions {
    std::string model = "planted";
    std::size_t n = 0;
    double p = 0.0;
    std::size_t q = 0;
    std::size_t k = 0;
    std::size_t m = 0;
    bool even = false;
    std::uint64_t seed = 1;
    std::string out;
};

struct SolveOptions {
    std::string graph, cover, params_file, out, stats;
    std::size_t k = 0;
    std::uint64_t seed = 1;
    double eta = 0.9;
    bool strict = false;
    bool timing = false;
};

struct BenchOptions {
    std::string corpus = "small";
    std::size_t seeds = 10;
    std::size_t jobs = 1;
    std::string out;
};

Params params_for(const Graph& g, double eta, const std::string& file, std::uint64_t seed) {
    auto params = Params::for_graph(g, eta);
    if (!file.empty()) apply_params_file(params, file);
    params.seed = seed;
    params.check();
    return params;
}

int cmd_gen(const GenOptions& o) {
    Instance inst;
    if (o.model == "planted") {
        inst = gen_planted(o.n, o.p, o.seed);
    } else if (o.model == "cliques-matching") {
        inst = gen_cliques_matching(o.q, o.seed, o.even);
    } else if (o.model == "triangles-biclique") {
        inst = gen_triangles_biclique(o.k, o.m, o.seed);
    } else {
        throw PreconditionError("unknown model " + o.model);
    }
    save_graph(inst.graph, o.out + ".graph");
    save_cover(inst.cover, o.out + ".cover");
    write_text_file(o.out + ".json", instance_spec_json(inst.spec));
    std::cout << "wrote " << o.out << ".graph, " << o.out << ".cover, " << o.out << ".json\n";
    return kOk;
}

int cmd_solve(const SolveOptions& o) {
    const auto g = load_graph(o.graph);
    const auto cover = load_cover(o.cover, g.order());
    const auto params = params_for(g, o.eta, o.params_file, o.seed);
    auto rng = make_rng(o.seed);
    const auto start = std::chrono::steady_clock::now();
    const auto report = solve(g, cover, o.k, params, rng, o.strict);
    RunContext ctx{o.seed, o.strict, std::nullopt};
    if (o.timing) {
        ctx.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    if (!o.stats.empty()) write_text_file(o.stats, run_stats_json(g, cover, report, ctx));
    if (!report.cover) {
        std::cerr << "no " << o.k << "-cycle 2-factor found: " << report.diagnostic << "\n";
        return kSolverFailure;
    }
    validate_cover(g, *report.cover);
    if (o.out.empty()) {
        std::cout << format_cover(*report.cover);
    } else {
        save_cover(*report.cover, o.out);
        std::cout << "solved: " << report.cover->components() << " components (" << report.route << ")\n";
    }
    return kOk;
}

int cmd_verify(const std::string& graph, const std::string& cover_path) {
    const auto g = load_graph(graph);
    const auto cycles = parse_cycles(read_text_file(cover_path));
    try {
        const auto count = validate_cycles(g, cycles);
        std::cout << "valid, " << count << (count == 1 ? " component" : " components") << "\n";
        return kOk;
    } catch (const CoverError& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return kSolverFailure;
    }
}

int cmd_oracle(const std::string& graph, std::size_t k) {
    const auto g = load_graph(graph);
    const bool yes = oracle_exists_k_factor(g, k);
    std::cout << (yes ? "yes" : "no") << ": " << (yes ? "a" : "no") << " 2-factor with exactly " << k
              << " cycles\n";
    return kOk;
}

struct BenchJob {
    std::string instance;
    Instance inst;
    std::size_t k = 0;
    std::uint64_t seed = 0;
};

struct BenchRow {
    bool success = false;
    std::string line;
};

std::vector<BenchJob> bench_corpus(const std::string& corpus, std::size_t seeds) {
    std::vector<BenchJob> jobs;
    auto add_planted = [&](std::size_t n, double p, std::vector<std::size_t> ks) {
        for (std::uint64_t s = 1; s <= seeds; ++s) {
            const auto inst = gen_planted(n, p, s);
            for (const auto k : ks) jobs.push_back({"planted", inst, k, s});
        }
    };
    if (corpus == "small") {
        add_planted(12, 0.5, {2, 3});
        add_planted(30, 0.3, {2, 5});
    } else if (corpus == "dense") {
        for (const std::size_t n : {200, 500}) {
            const double p = std::pow(static_cast<double>(n), -0.3);
            add_planted(n, p, {2, 8, static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 0.4)))});
        }
    } else if (corpus == "complete") {
        for (std::uint64_t s = 1; s <= seeds; ++s) {
            const std::size_t n = 6 + (s - 1) % 35;
            std::vector<Vertex> order(n);
            for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Vertex>(i);
            Instance inst{Graph::complete(n), CycleCover::hamilton(order), {"complete", n, 1.0, 0, 0, 0, s}};
            for (const std::size_t k : {std::size_t{1}, std::size_t{2}, n / 3}) jobs.push_back({"complete", inst, k, s});
        }
    } else {
        throw PreconditionError("unknown corpus " + corpus + " (small, dense, complete)");
    }
    return jobs;
}

BenchRow run_bench_job(const BenchJob& job) {
    const auto& g = job.inst.graph;
    const auto params = params_for(g, 0.9, "", job.seed);
    auto rng = make_rng(job.seed);
    const auto report = solve(g, job.inst.cover, job.k, params, rng);
    bool valid = false;
    if (report.cover) {
        try {
            valid = validate_cover(g, *report.cover) == job.k;
        } catch (const CoverError&) {
            valid = false;
        }
    }
    const auto h_before = report.enrichment ? report.enrichment->h_before : 0;
    const auto h_after = report.enrichment ? report.enrichment->h_after : 0;
    const auto calls = report.enrichment ? report.enrichment->thomassen_calls : 0;
    std::ostringstream row;
    row << job.instance << ',' << g.order() << ',' << g.size() << ',' << job.seed << ',' << job.k << ','
        << report.initial_components << ',' << (valid ? 1 : 0) << ',' << report.route << ','
        << (report.cover ? report.cover->components() : 0) << ',' << switch_log_delta(report) << ','
        << (report.cover ? symmetric_difference_size(job.inst.cover, *report.cover) : 0) << ',' << h_before << ','
        << h_after << ',' << calls;
    return {valid, row.str()};
}

int cmd_bench(const BenchOptions& o) {
    const auto jobs = bench_corpus(o.corpus, o.seeds);
    std::vector<BenchRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next++; i < jobs.size(); i = next++) rows[i] = run_bench_job(jobs[i]);
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::max<std::size_t>(1, o.jobs); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "instance,n,m,seed,k,initial_components,success,route,components,switch_delta,symmetric_difference,"
           "h_edges_before,h_edges_after,thomassen_calls\n";
    std::size_t ok = 0;
    for (const auto& r : rows) {
        csv << r.line << '\n';
        ok += r.success ? 1 : 0;
    }
    if (o.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(o.out, csv.str());
    }
    std::cerr << "success rate: " << ok << "/" << rows.size() << "\n";
    return ok == rows.size() ? kOk : kSolverFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Split a 2-factor into exactly k cycles by C4 switches"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate an instance (graph, cover, JSON spec)");
    g->add_option("--model", gen.model, "planted | cliques-matching | triangles-biclique")->capture_default_str();
    g->add_option("--n", gen.n, "Vertex count (planted)");
    g->add_option("--p", gen.p, "Extra-edge probability (planted)");
    g->add_option("--q", gen.q, "Clique order (cliques-matching)");
    g->add_option("--k", gen.k, "Cycle count (triangles-biclique)");
    g->add_option("--m", gen.m, "Biclique side (triangles-biclique)");
    g->add_flag("--even", gen.even, "Allow even clique order");
    g->add_option("--seed", gen.seed)->capture_default_str();
    g->add_option("--out", gen.out, "Output prefix")->required();

    SolveOptions sol;
    auto* s = app.add_subcommand("solve", "Find a 2-factor with exactly k cycles");
    s->add_option("--graph", sol.graph)->required();
    s->add_option("--cover", sol.cover)->required();
    s->add_option("--k", sol.k)->required();
    s->add_option("--seed", sol.seed)->capture_default_str();
    s->add_option("--params", sol.params_file, "key = value overrides");
    s->add_option("--eta", sol.eta, "Enrichment exponent for default thresholds")->capture_default_str();
    s->add_flag("--strict", sol.strict, "Skip the direct split and always run merge/enrich/unmerge");
    s->add_option("--out", sol.out, "Output cover file (stdout if omitted)");
    s->add_option("--stats", sol.stats, "Run statistics JSON");
    s->add_flag("--timing", sol.timing, "Record wall time in the stats");

    std::string vgraph, vcover;
    auto* v = app.add_subcommand("verify", "Check that a cover is a 2-factor of a graph");
    v->add_option("--graph", vgraph)->required();
    v->add_option("--cover", vcover)->required();

    std::string ograph;
    std::size_t ok = 0;
    auto* o = app.add_subcommand("oracle", "Exhaustively decide whether a k-cycle 2-factor exists (n <= 14)");
    o->add_option("--graph", ograph)->required();
    o->add_option("--k", ok)->required();

    BenchOptions bench;
    auto* b = app.add_subcommand("bench", "Solve a seeded corpus and write a CSV");
    b->add_option("--corpus", bench.corpus, "small | dense | complete")->capture_default_str();
    b->add_option("--seeds", bench.seeds)->capture_default_str();
    b->add_option("--jobs", bench.jobs)->capture_default_str();
    b->add_option("--out", bench.out, "CSV file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*s) return cmd_solve(sol);
        if (*v) return cmd_verify(vgraph, vcover);
        if (*o) return cmd_oracle(ograph, ok);
        if (*b) return cmd_bench(bench);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
