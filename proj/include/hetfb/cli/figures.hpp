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
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "hetfb/analytic/coop.hpp"
#include "hetfb/analytic/noncoop.hpp"
#include "hetfb/model/config.hpp"
#include "hetfb/montecarlo/estimators.hpp"
#include "hetfb/optimize/coop.hpp"
#include "hetfb/optimize/noncoop.hpp"

namespace hetfb::cli {

inline double gain_pct(double proposed, double baseline) { return 100.0 * (proposed / baseline - 1.0); }

/// Water-filling vs per-tier-equal area SE at b bits per BS on average
/// (B_total = b * sum_k lambda_k).
struct NoncoopComparison {
    double bits_per_bs = 0.0;
    double b_total = 0.0;  // in the document's density unit
    std::vector<double> proposed;
    std::vector<double> equal;
    double area_proposed = 0.0;  // bits/s/Hz per km^2
    double area_equal = 0.0;
    double gain = 0.0;           // percent
};

inline NoncoopComparison compare_noncoop(const ConfigDocument& doc, double bits_per_bs) {
    const auto cfg = doc.network();
    NoncoopComparison c;
    c.bits_per_bs = bits_per_bs;
    double lam = 0.0;
    for (const auto& t : cfg.tiers) lam += t.density;
    c.b_total = bits_per_bs * lam / doc.density_scale();
    c.proposed = partition_noncoop(cfg, bits_per_bs * lam).allocation.bits;
    c.equal = equal_partition_noncoop(cfg, bits_per_bs * lam).bits;
    c.area_proposed = 1e6 * area_se(cfg, c.proposed);
    c.area_equal = 1e6 * area_se(cfg, c.equal);
    c.gain = gain_pct(c.area_proposed, c.area_equal);
    return c;
}

/// Cooperative splits at one budget: the closed form as printed (negative
/// entries zeroed, may overspend), the budget-feasible re-solve, the equal
/// split and, for single-tier documents, the delta-free expected split.
struct CoopComparison {
    double b_total = 0.0;
    std::vector<double> printed, feasible, equal, expected;
    double se_printed = 0.0, se_feasible = 0.0, se_equal = 0.0, se_expected = 0.0;
    double gain_printed = 0.0, gain_feasible = 0.0, gain_expected = 0.0;
    bool single_tier = false;
};

inline double coop_se(const ConfigDocument& doc, const std::vector<double>& bits) {
    return ergodic_se_coop(CoopCondition{doc.network(), *doc.cluster(), bits});
}

inline CoopComparison compare_coop(const ConfigDocument& doc, double b_total) {
    const auto g = *doc.cluster();
    const int L = g.size;
    CoopComparison c;
    c.b_total = b_total;
    c.printed = partition_coop(g.deltas, L, b_total, ClampPolicy::zero_negatives).bits;
    c.feasible = partition_coop(g.deltas, L, b_total, ClampPolicy::resolve).bits;
    c.equal = equal_partition_coop(L, b_total).bits;
    c.se_printed = coop_se(doc, c.printed);
    c.se_feasible = coop_se(doc, c.feasible);
    c.se_equal = coop_se(doc, c.equal);
    c.gain_printed = gain_pct(c.se_printed, c.se_equal);
    c.gain_feasible = gain_pct(c.se_feasible, c.se_equal);
    c.single_tier = doc.tiers.size() == 1;
    if (c.single_tier) {
        c.expected = partition_single_tier_expected(L, doc.pathloss_exponent, b_total);
        for (auto& b : c.expected) b = std::max(b, 0.0);
        c.se_expected = coop_se(doc, c.expected);
        c.gain_expected = gain_pct(c.se_expected, c.se_equal);
    }
    return c;
}

/// Line search over the home BS feedback with all antennas, against the
/// reduced-antenna network (N_k = L) under the closed-form split.
struct GeneralSearch {
    LineSearchResult best;
    double se_reduced_printed = 0.0;
    double se_reduced_feasible = 0.0;
    double gain_printed = 0.0;
    double gain_feasible = 0.0;
};

inline GeneralSearch search_general(const ConfigDocument& doc, double b_total, const std::vector<double>& gamma_grid,
                                    std::size_t samples, std::uint64_t seed) {
    const auto cfg = doc.network();
    const auto g = *doc.cluster();
    const int L = g.size;
    std::vector<int> antennas;
    for (std::size_t l = 1; l < g.member_tiers.size(); ++l) antennas.push_back(cfg.tier(g.member_tiers[l]).antennas);
    const int home_antennas = cfg.tier(g.home_tier()).antennas;

    AnalyticOptions opt;
    opt.quadrature.abs_tol = 1e-7;
    opt.quadrature.rel_tol = 1e-7;
    std::map<double, std::vector<double>> desired;  // by home bits, common seed
    auto evaluate = [&](double home, const std::vector<double>& bits) {
        auto it = desired.find(home);
        if (it == desired.end()) it = desired.emplace(home, mc::cb_desired_samples(home_antennas, L, home, samples, seed)).first;
        return mc::semi_analytic_se_general(CoopCondition{cfg, g, bits}, it->second, opt);
    };
    GeneralSearch s;
    s.best = line_search_general(g.deltas, antennas, b_total, gamma_grid, evaluate);

    ConfigDocument reduced = doc;
    for (auto& t : reduced.tiers) t.antennas = L;
    s.se_reduced_printed = coop_se(reduced, partition_coop(g.deltas, L, b_total, ClampPolicy::zero_negatives).bits);
    s.se_reduced_feasible = coop_se(reduced, partition_coop(g.deltas, L, b_total, ClampPolicy::resolve).bits);
    s.gain_printed = gain_pct(s.best.se, s.se_reduced_printed);
    s.gain_feasible = gain_pct(s.best.se, s.se_reduced_feasible);
    return s;
}

}  // namespace hetfb::cli
