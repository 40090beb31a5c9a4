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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hetfb/cli/experiment.hpp"

namespace {

struct Flags {
    std::string config;
    std::string figure;
    double b_total = 0.0;
    std::vector<double> gamma_db;
    std::size_t trials = 0;
    std::uint64_t seed = 1;
    std::string out;
    bool json = false;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feedback allocation and SIR analysis for multi-antenna HetNets"};
    app.require_subcommand(1);

    Flags f;
    std::vector<std::pair<CLI::App*, hetfb::cli::CommandKind>> subs;
    const auto help = [](hetfb::cli::CommandKind k) -> std::string {
        using K = hetfb::cli::CommandKind;
        switch (k) {
            case K::noncoop_se: return "per-tier ergodic SE without cooperation";
            case K::coop_se: return "cooperative SE of the typical user under several splits";
            case K::optimize_noncoop: return "water-filling split of a density-weighted budget across tiers";
            case K::optimize_coop: return "closed-form split across cluster members";
            case K::optimize_general: return "home-BS bits and member split with all antennas";
            case K::simulate: return "Monte Carlo SIR CCDF against the analysis";
            case K::reproduce: return "regenerate a figure's data (fig1..fig4)";
        }
        return {};
    };
    for (const auto& [name, kind] : hetfb::cli::command_names()) {
        auto* s = app.add_subcommand(name, help(kind));
        if (kind == hetfb::cli::CommandKind::reproduce) s->add_option("figure", f.figure, "fig1, fig2, fig3 or fig4")->required();
        else s->add_option("--config", f.config, "TOML configuration file")->required();
        s->add_option("--btotal", f.b_total, "total feedback bits (bits per BS for fig1)");
        s->add_option("--gamma-db", f.gamma_db, "SIR thresholds in dB")->delimiter(',');
        s->add_option("--trials", f.trials, "Monte Carlo trials");
        s->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
        s->add_option("--out", f.out, "output file (default: stdout)");
        s->add_flag("--json", f.json, "write JSON instead of CSV");
        subs.emplace_back(s, kind);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    hetfb::cli::ExperimentSpec spec;
    for (const auto& [s, kind] : subs) {
        if (!s->parsed()) continue;
        spec.kind = kind;
        if (s->count("--btotal")) spec.b_total = f.b_total;
        if (s->count("--trials")) spec.trials = f.trials;
    }
    spec.config_path = f.config;
    spec.figure = f.figure;
    spec.gamma_db = f.gamma_db;
    spec.seed = f.seed;
    spec.out_path = f.out;
    spec.json = f.json;
    return hetfb::cli::run(spec, std::cout, std::cerr);
}
