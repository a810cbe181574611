#include "twofactor/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>
#include <variant>

namespace twofactor {

namespace {

static_assert(std::is_same_v<std::size_t, std::uint64_t>, "seed is handled as a size field");

using Field = std::variant<std::size_t Params::*, double Params::*, bool Params::*>;

struct Entry {
    const char* name;
    Field field;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        {"common_nbr_threshold", &Params::common_nbr_threshold},
        {"mset_threshold", &Params::mset_threshold},
        {"coverage_slack", &Params::coverage_slack},
        {"set_count_cap", &Params::set_count_cap},
        {"good_set_size_cap", &Params::good_set_size_cap},
        {"overflow_cap", &Params::overflow_cap},
        {"growth_per_edge", &Params::growth_per_edge},
        {"close_index_threshold", &Params::close_index_threshold},
        {"cover_nbr_threshold", &Params::cover_nbr_threshold},
        {"zeta", &Params::zeta},
        {"h_edge_target", &Params::h_edge_target},
        {"protected_cap", &Params::protected_cap},
        {"sample_probability", &Params::sample_probability},
        {"relax_degree_bound", &Params::relax_degree_bound},
        {"full_domination", &Params::full_domination},
        {"witness_set_size", &Params::witness_set_size},
        {"colour_size", &Params::colour_size},
        {"min_colour_class", &Params::min_colour_class},
        {"sample_retries", &Params::sample_retries},
        {"rewire_attempts", &Params::rewire_attempts},
        {"enrich_iterations", &Params::enrich_iterations},
        {"enumeration_cap", &Params::enumeration_cap},
        {"search_node_budget", &Params::search_node_budget},
        {"exhaustive_cutoff", &Params::exhaustive_cutoff},
        {"partition_retries", &Params::partition_retries},
        {"seed", &Params::seed},
    };
    return table;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

template <class T>
bool parse_unsigned(std::string_view text, T& out) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::size_t pow_count(double n, double exponent) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::pow(n, exponent))));
}

}  // namespace

Params Params::for_graph(const Graph& g, double eta) {
    Params p;
    const double n = static_cast<double>(std::max<std::size_t>(g.order(), 2));
    const double delta = static_cast<double>(g.min_degree());
    const double eta_p = eta / 10.0;
    p.zeta = eta / 60.0;
    // Expected common neighbourhood of two vertices is about δ²/n; the
    // partition and M-set thresholds take a fixed fraction of it.
    p.common_nbr_threshold = std::max<std::size_t>(1, static_cast<std::size_t>(delta * delta / (2.0 * n)));
    p.mset_threshold = std::max<std::size_t>(1, static_cast<std::size_t>(delta * delta / (4.0 * n)));
    p.coverage_slack = pow_count(n, 1.0 - eta_p);
    p.set_count_cap = pow_count(n, 1.0 - 3.0 * eta_p);
    p.good_set_size_cap = pow_count(n, 2.0 * eta_p);
    p.overflow_cap = pow_count(n, 1.0 - 6.0 * eta_p);
    p.growth_per_edge = pow_count(n, 1.0 - 2.0 * eta_p);
    p.close_index_threshold = pow_count(n, 1.0 - 4.0 * eta_p);
    p.h_edge_target = pow_count(n, 2.0 - eta);
    p.protected_cap = g.order();
    const double ln = std::log(n);
    p.relax_degree_bound = std::sqrt(n) * ln * ln + 2.0 >= delta;
    return p;
}

void Params::check() const {
    const std::pair<const char*, std::size_t> positive[] = {
        {"common_nbr_threshold", common_nbr_threshold},
        {"mset_threshold", mset_threshold},
        {"set_count_cap", set_count_cap},
        {"good_set_size_cap", good_set_size_cap},
        {"overflow_cap", overflow_cap},
        {"growth_per_edge", growth_per_edge},
        {"close_index_threshold", close_index_threshold},
        {"witness_set_size", witness_set_size},
        {"colour_size", colour_size},
        {"min_colour_class", min_colour_class},
        {"sample_retries", sample_retries},
        {"rewire_attempts", rewire_attempts},
        {"enumeration_cap", enumeration_cap},
        {"search_node_budget", search_node_budget},
        {"partition_retries", partition_retries},
    };
    for (const auto& [name, value] : positive) {
        if (value == 0) throw PreconditionError(std::string("parameter ") + name + " must be positive");
    }
    if (!(zeta > 0.0 && zeta < 0.5)) throw PreconditionError("parameter zeta must lie in (0, 0.5)");
    if (sample_probability < 0.0 || sample_probability > 1.0) {
        throw PreconditionError("parameter sample_probability must lie in [0, 1]");
    }
    if (witness_set_size > 24) throw PreconditionError("parameter witness_set_size must be at most 24");
    if (colour_size > witness_set_size) {
        throw PreconditionError("parameter colour_size exceeds witness_set_size");
    }
}

void apply_params_text(Params& params, std::string_view text) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected \"key = value\"");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto& table = entries();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) { return key == e.name; });
        if (it == table.end()) throw ParseError(line_no, "unknown parameter \"" + std::string(key) + "\"");
        bool ok = false;
        std::visit(
            [&](auto member) {
                using T = std::remove_reference_t<decltype(params.*member)>;
                if constexpr (std::is_same_v<T, bool>) {
                    if (value == "true" || value == "1") {
                        params.*member = true;
                        ok = true;
                    } else if (value == "false" || value == "0") {
                        params.*member = false;
                        ok = true;
                    }
                } else if constexpr (std::is_same_v<T, double>) {
                    try {
                        std::size_t used = 0;
                        const double v = std::stod(std::string(value), &used);
                        ok = used == value.size();
                        if (ok) params.*member = v;
                    } catch (const std::exception&) {
                        ok = false;
                    }
                } else {
                    T v{};
                    ok = parse_unsigned(value, v);
                    if (ok) params.*member = v;
                }
            },
            it->field);
        if (!ok) throw ParseError(line_no, "bad value for \"" + std::string(key) + "\"");
        if (end == text.size()) break;
    }
}

void apply_params_file(Params& params, const std::filesystem::path& path) {
    apply_params_text(params, read_text_file(path));
}

std::string format_params(const Params& params) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& e : entries()) {
        out << e.name << " = ";
        std::visit(
            [&](auto member) {
                using T = std::remove_reference_t<decltype(params.*member)>;
                if constexpr (std::is_same_v<T, bool>) {
                    out << (params.*member ? "true" : "false");
                } else {
                    out << params.*member;
                }
            },
            e.field);
        out << '\n';
    }
    return out.str();
}

std::vector<std::string> param_names() {
    std::vector<std::string> names;
    for (const auto& e : entries()) names.emplace_back(e.name);
    return names;
}

}  // namespace twofactor
