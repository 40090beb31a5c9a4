/*
   Copyright 2026 The hetfb Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hetfb/analytic/coop.hpp"
#include "hetfb/analytic/noncoop.hpp"
#include "hetfb/cli/figures.hpp"
#include "hetfb/error.hpp"
#include "hetfb/model/config.hpp"
#include "hetfb/model/presets.hpp"
#include "hetfb/montecarlo/estimators.hpp"
#include "hetfb/optimize/coop.hpp"
#include "hetfb/optimize/integer.hpp"
#include "hetfb/optimize/noncoop.hpp"

namespace hetfb::cli {

enum class CommandKind { noncoop_se, coop_se, optimize_noncoop, optimize_coop, optimize_general, simulate, reproduce };

inline const std::vector<std::pair<std::string, CommandKind>>& command_names() {
    static const std::vector<std::pair<std::string, CommandKind>> names{
        {"noncoop-se", CommandKind::noncoop_se},           {"coop-se", CommandKind::coop_se},
        {"optimize-noncoop", CommandKind::optimize_noncoop}, {"optimize-coop", CommandKind::optimize_coop},
        {"optimize-general", CommandKind::optimize_general}, {"simulate", CommandKind::simulate},
        {"reproduce", CommandKind::reproduce}};
    return names;
}

inline std::string to_string(CommandKind k) {
    for (const auto& [name, kind] : command_names())
        if (kind == k) return name;
    return "?";
}

struct ExperimentSpec {
    CommandKind kind = CommandKind::noncoop_se;
    std::string config_path;
    std::string figure;  // reproduce only: fig1 .. fig4
    std::optional<double> b_total;
    std::vector<double> gamma_db;
    std::optional<std::size_t> trials;
    std::uint64_t seed = 1;
    std::string out_path;  // empty: standard output
    bool json = false;
};

/// Bad input: reported with exit status 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems)) {}
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& p) {
        std::string s;
        for (const auto& x : p) s += (s.empty() ? "" : "; ") + x;
        return s;
    }
    std::vector<std::string> problems_;
};

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json info = nlohmann::ordered_json::object();
};

inline std::string format_cell(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    const double v = std::get<double>(c);
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
}

inline void write_json(const Table& t, const ExperimentSpec& spec, std::ostream& os) {
    nlohmann::ordered_json doc;
    doc["command"] = to_string(spec.kind);
    if (!spec.figure.empty()) doc["figure"] = spec.figure;
    if (!spec.config_path.empty()) doc["config"] = spec.config_path;
    doc["seed"] = spec.seed;
    doc["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const auto* s = std::get_if<std::string>(&row[i])) r[t.columns[i]] = *s;
            else if (std::isfinite(std::get<double>(row[i]))) r[t.columns[i]] = std::get<double>(row[i]);
            else r[t.columns[i]] = nullptr;
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["info"] = t.info;
    os << doc.dump(2) << '\n';
}

namespace detail {

constexpr double kBlank = NAN;

inline std::vector<double> default_gamma_db() { return {-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0}; }

inline std::vector<double> sweep(const ExperimentSpec& spec) {
    if (spec.b_total) return {*spec.b_total};
    std::vector<double> b;
    for (int i = 2; i <= 20; i += 2) b.push_back(i);
    return b;
}

inline std::vector<double> gamma_linear(const std::vector<double>& db) {
    std::vector<double> g;
    for (double x : db) g.push_back(db_to_linear(x));
    return g;
}

inline ConfigDocument load_validated(const ExperimentSpec& spec) {
    ConfigDocument doc;
    try {
        doc = load_config(spec.config_path);
    } catch (const std::exception& e) {
        throw validation_error({e.what()});
    }
    const auto report = doc.validate();
    if (!report.ok()) {
        std::vector<std::string> p;
        for (const auto& v : report.violations) p.push_back(v.field + ": " + v.message);
        throw validation_error(p);
    }
    return doc;
}

inline void require_cluster(const ConfigDocument& doc, const std::string& what) {
    if (!doc.cluster_spec) throw validation_error({"cluster: " + what + " needs a [cluster] section"});
}

/// Budget in the document's own unit: --btotal, else [feedback].budget.
inline double budget(const ExperimentSpec& spec, const ConfigDocument& doc) {
    if (spec.b_total) return *spec.b_total;
    if (doc.feedback_spec) return doc.feedback_spec->budget;
    throw validation_error({"btotal: give --btotal or a [feedback] budget"});
}

/// Per-tier bits of a non-cooperative document: [feedback].bits when
/// present, else the water-filling split of the budget.
inline std::vector<double> noncoop_bits(const ExperimentSpec& spec, const ConfigDocument& doc) {
    if (!spec.b_total && doc.feedback_spec && !doc.feedback_spec->bits.empty()) return doc.feedback_spec->bits;
    // --btotal is density-weighted in the document's density unit
    const double b = spec.b_total ? *spec.b_total * doc.density_scale() : (budget(spec, doc), doc.feedback()->budget);
    return partition_noncoop(doc.network(), b).allocation.bits;
}

inline std::vector<double> coop_bits(const ExperimentSpec& spec, const ConfigDocument& doc) {
    if (!spec.b_total && doc.feedback_spec && !doc.feedback_spec->bits.empty()) return doc.feedback_spec->bits;
    return partition_coop(doc.cluster()->deltas, doc.cluster_spec->size, budget(spec, doc)).bits;
}

inline std::vector<std::string> member_columns(int L, const std::string& prefix = "b_") {
    std::vector<std::string> c;
    for (int l = 2; l <= L; ++l) c.push_back(prefix + std::to_string(l));
    return c;
}

inline Table noncoop_se(const ExperimentSpec& spec) {
    const auto doc = load_validated(spec);
    const auto cfg = doc.network();
    const auto bits = noncoop_bits(spec, doc);
    const std::size_t trials = spec.trials.value_or(0);
    Table t;
    t.columns = {"tier", "bits", "association_probability", "se_analytic", "se_lower_bound"};
    if (trials > 0) t.columns.insert(t.columns.end(), {"se_sim_mean", "se_sim_half_width"});
    for (std::size_t k = 0; k < cfg.tier_count(); ++k) {
        std::vector<Cell> row{static_cast<double>(k + 1), bits[k], association_probability(cfg, k),
                              ergodic_se_noncoop(cfg, k, bits[k]), se_lower_bound(cfg, k, bits[k])};
        if (trials > 0) {
            const auto s = mc::estimate_noncoop(cfg, k, bits[k], {1.0}, mc::SimulationOptions{trials, spec.seed + k});
            row.insert(row.end(), {s.se.mean, s.se.half_width_95});
        }
        t.rows.push_back(std::move(row));
    }
    t.info["area_se_per_km2"] = 1e6 * area_se(cfg, bits);
    return t;
}

inline Table coop_se(const ExperimentSpec& spec) {
    const auto doc = load_validated(spec);
    require_cluster(doc, "coop-se");
    const int L = doc.cluster_spec->size;
    const double b = budget(spec, doc);
    const std::size_t trials = spec.trials.value_or(0);
    Table t;
    t.columns = {"b_total", "scheme"};
    for (const auto& c : member_columns(L)) t.columns.push_back(c);
    t.columns.push_back("se_analytic");
    if (trials > 0) t.columns.insert(t.columns.end(), {"se_sim_mean", "se_sim_half_width"});
    auto add = [&](const std::string& name, const std::vector<double>& bits) {
        CoopCondition c{doc.network(), *doc.cluster(), bits};
        std::vector<Cell> row{b, name};
        for (double x : bits) row.push_back(x);
        row.push_back(ergodic_se_coop(c));
        if (trials > 0) {
            const auto s = mc::estimate_coop_conditioned(c, {1.0}, mc::SimulationOptions{trials, spec.seed});
            row.insert(row.end(), {s.se.mean, s.se.half_width_95});
        }
        t.rows.push_back(std::move(row));
    };
    if (!spec.b_total && doc.feedback_spec && !doc.feedback_spec->bits.empty()) add("given", doc.feedback_spec->bits);
    const auto g = *doc.cluster();
    add("proposed", partition_coop(g.deltas, L, b).bits);
    add("proposed_printed", partition_coop(g.deltas, L, b, ClampPolicy::zero_negatives).bits);
    add("equal", equal_partition_coop(L, b).bits);
    return t;
}

inline Table optimize_noncoop(const ExperimentSpec& spec) {
    const auto doc = load_validated(spec);
    const auto cfg = doc.network();
    const double b = budget(spec, doc);
    const double scaled = spec.b_total ? b * doc.density_scale() : doc.feedback()->budget;
    const auto r = partition_noncoop(cfg, scaled);
    const auto i = integer_round(r.allocation, RoundingStrategy::round_and_trim);
    Table t;
    t.columns = {"b_total", "kind"};
    for (std::size_t k = 0; k < cfg.tier_count(); ++k) t.columns.push_back("b_" + std::to_string(k + 1));
    t.columns.push_back("water_level");
    for (const auto& [name, alloc] : {std::pair{"real", r.allocation}, std::pair{"integer", i}}) {
        std::vector<Cell> row{b, std::string(name)};
        for (double x : alloc.bits) row.push_back(x);
        row.push_back(r.multiplier);
        t.rows.push_back(std::move(row));
    }
    auto equal = equal_partition_noncoop(cfg, scaled);
    std::vector<Cell> row{b, std::string("equal")};
    for (double x : equal.bits) row.push_back(x);
    row.push_back(kBlank);
    t.rows.push_back(std::move(row));
    return t;
}

inline Table optimize_coop(const ExperimentSpec& spec) {
    const auto doc = load_validated(spec);
    require_cluster(doc, "optimize-coop");
    const auto g = *doc.cluster();
    const double b = budget(spec, doc);
    const auto real = partition_coop(g.deltas, g.size, b);
    const auto ints = integer_round(real, RoundingStrategy::round_and_trim);
    Table t;
    t.columns = {"b_total", "kind"};
    for (const auto& c : member_columns(g.size)) t.columns.push_back(c);
    for (const auto& [name, alloc] : {std::pair{"real", real}, std::pair{"integer", ints}}) {
        std::vector<Cell> row{b, std::string(name)};
        for (double x : alloc.bits) row.push_back(x);
        t.rows.push_back(std::move(row));
    }
    if (doc.tiers.size() == 1) {
        std::vector<Cell> row{b, std::string("expected")};
        for (double x : partition_single_tier_expected(g.size, doc.pathloss_exponent, b)) row.push_back(x);
        t.rows.push_back(std::move(row));
        const auto e = effective_cluster_size(b, doc.pathloss_exponent);
        t.info["effective_cluster_size"] = {{"exact", e.exact}, {"lower_bound", e.lower_bound}, {"asymptotic", e.asymptotic}};
    }
    return t;
}

inline std::vector<double> gamma_grid_or_default(const ExperimentSpec& spec) {
    return spec.gamma_db.empty() ? default_gamma_grid() : gamma_linear(spec.gamma_db);
}

inline void add_general_rows(Table& t, const std::string& name, const ConfigDocument& doc, double b,
                             const ExperimentSpec& spec) {
    const auto s = search_general(doc, b, gamma_grid_or_default(spec), spec.trials.value_or(20000), spec.seed);
    std::vector<Cell> row{b};
    if (!name.empty()) row.push_back(name);
    row.insert(row.end(), {s.best.home_bits, linear_to_db(s.best.gamma)});
    for (double x : s.best.allocation.bits) row.push_back(x);
    row.insert(row.end(), {s.best.se, s.se_reduced_printed, s.gain_printed, s.se_reduced_feasible, s.gain_feasible});
    t.rows.push_back(std::move(row));
}

inline std::vector<std::string> general_columns(int L, bool with_config) {
    std::vector<std::string> c{"b_total"};
    if (with_config) c.push_back("config");
    c.insert(c.end(), {"b_home", "gamma_db"});
    for (const auto& m : member_columns(L)) c.push_back(m);
    c.insert(c.end(), {"se_general", "se_reduced_printed", "gain_printed_pct", "se_reduced_feasible", "gain_feasible_pct"});
    return c;
}

inline Table optimize_general(const ExperimentSpec& spec) {
    const auto doc = load_validated(spec);
    require_cluster(doc, "optimize-general");
    Table t;
    t.columns = general_columns(doc.cluster_spec->size, false);
    add_general_rows(t, "", doc, budget(spec, doc), spec);
    return t;
}

inline Table simulate(const ExperimentSpec& spec) {
    const auto doc = load_validated(spec);
    const auto db = spec.gamma_db.empty() ? default_gamma_db() : spec.gamma_db;
    const auto g = gamma_linear(db);
    const mc::SimulationOptions opt{spec.trials.value_or(100000), spec.seed};
    Table t;
    if (doc.cluster_spec) {
        CoopCondition c{doc.network(), *doc.cluster(), coop_bits(spec, doc)};
        const auto s = mc::estimate_coop_conditioned(c, g, opt);
        t.columns = {"gamma_db", "ccdf_analytic", "ccdf_sim_mean", "ccdf_sim_half_width", "in_band"};
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double a = sir_ccdf_coop(g[i], c);
            t.rows.push_back({db[i], a, s.ccdf[i].mean, s.ccdf[i].half_width_95,
                              static_cast<double>(s.ccdf[i].covers_proportion(a))});
        }
        t.info["se_analytic"] = ergodic_se_coop(c);
        t.info["se_sim_mean"] = s.se.mean;
        t.info["se_sim_half_width"] = s.se.half_width_95;
        return t;
    }
    const auto cfg = doc.network();
    const auto bits = noncoop_bits(spec, doc);
    t.columns = {"gamma_db", "tier", "bits", "ccdf_analytic", "ccdf_sim_mean", "ccdf_sim_half_width", "in_band"};
    std::vector<mc::SirStatistics> per_tier;
    for (std::size_t k = 0; k < cfg.tier_count(); ++k) {
        auto o = opt;
        o.seed = spec.seed + k;
        per_tier.push_back(mc::estimate_noncoop(cfg, k, bits[k], g, o));
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t k = 0; k < cfg.tier_count(); ++k) {
            const double a = sir_ccdf_noncoop(g[i], cfg, k, bits[k]);
            const auto& e = per_tier[k].ccdf[i];
            t.rows.push_back({db[i], static_cast<double>(k + 1), bits[k], a, e.mean, e.half_width_95,
                              static_cast<double>(e.covers_proportion(a))});
        }
    return t;
}

inline Table reproduce(const ExperimentSpec& spec) {
    Table t;
    const std::string& f = spec.figure;
    if (f == "fig1") {
        t.columns = {"bits_per_bs", "config", "b_total", "b_1", "b_2", "b_3", "area_se_proposed", "area_se_equal",
                     "gain_pct"};
        for (char v : {'a', 'b'})
            for (double b : sweep(spec)) {
                const auto c = compare_noncoop(presets::fig1(v), b);
                t.rows.push_back({b, std::string("fig1") + v, c.b_total, c.proposed[0], c.proposed[1], c.proposed[2],
                                  c.area_proposed, c.area_equal, c.gain});
            }
        return t;
    }
    if (f == "fig2" || f == "fig4") {
        t.columns = {"b_total", "config", "se_equal", "se_proposed_printed", "gain_printed_pct", "se_proposed_feasible",
                     "gain_feasible_pct"};
        if (f == "fig4") t.columns.insert(t.columns.end(), {"se_expected", "gain_expected_pct"});
        for (char v : {'a', 'b'})
            for (double b : sweep(spec)) {
                const auto doc = f == "fig2" ? presets::fig2(v) : presets::fig4(v);
                const auto c = compare_coop(doc, b);
                std::vector<Cell> row{b, f + v, c.se_equal, c.se_printed, c.gain_printed, c.se_feasible, c.gain_feasible};
                if (f == "fig4") row.insert(row.end(), {c.se_expected, c.gain_expected});
                t.rows.push_back(std::move(row));
            }
        return t;
    }
    if (f == "fig3") {
        t.columns = general_columns(4, true);
        for (char v : {'a', 'b'}) {
            const auto doc = presets::fig3(v);
            add_general_rows(t, std::string("fig3") + v, doc, spec.b_total.value_or(doc.feedback_spec->budget), spec);
        }
        return t;
    }
    throw validation_error({"figure: expected fig1, fig2, fig3 or fig4, got '" + f + "'"});
}

inline void check_spec(const ExperimentSpec& spec) {
    std::vector<std::string> p;
    if (spec.kind == CommandKind::reproduce) {
        if (spec.figure.empty()) p.push_back("figure: reproduce needs fig1, fig2, fig3 or fig4");
    } else if (spec.config_path.empty()) {
        p.push_back("config: --config is required for " + to_string(spec.kind));
    }
    const bool simulates = spec.kind == CommandKind::simulate || spec.kind == CommandKind::optimize_general ||
                           (spec.kind == CommandKind::reproduce && spec.figure == "fig3");
    if (simulates && spec.trials && *spec.trials < 1) p.push_back("trials: must be at least 1");
    if (spec.b_total && !(*spec.b_total >= 0.0)) p.push_back("btotal: must be nonnegative");
    if (!p.empty()) throw validation_error(p);
}

}  // namespace detail

/// Runs the experiment and returns the table it produced. Throws
/// validation_error for bad input and the library's numerical errors.
inline Table execute(const ExperimentSpec& spec) {
    detail::check_spec(spec);
    switch (spec.kind) {
        case CommandKind::noncoop_se: return detail::noncoop_se(spec);
        case CommandKind::coop_se: return detail::coop_se(spec);
        case CommandKind::optimize_noncoop: return detail::optimize_noncoop(spec);
        case CommandKind::optimize_coop: return detail::optimize_coop(spec);
        case CommandKind::optimize_general: return detail::optimize_general(spec);
        case CommandKind::simulate: return detail::simulate(spec);
        case CommandKind::reproduce: return detail::reproduce(spec);
    }
    throw validation_error({"unknown command"});
}

/// Exit status: 0 success, 1 invalid input (violations on `err`), 2 numerical failure.
inline int run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
    Table t;
    try {
        t = execute(spec);
    } catch (const validation_error& e) {
        for (const auto& p : e.problems()) err << "error: " << p << '\n';
        return 1;
    } catch (const convergence_error& e) {
        err << "numerical failure: " << e.what() << " (partial " << e.partial_estimate() << ")\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    std::ofstream file;
    std::ostream* os = &out;
    if (!spec.out_path.empty()) {
        file.open(spec.out_path);
        if (!file) {
            err << "error: cannot write '" << spec.out_path << "'\n";
            return 1;
        }
        os = &file;
    }
    if (spec.json) write_json(t, spec, *os);
    else write_csv(t, *os);
    return 0;
}

}  // namespace hetfb::cli
