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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <vector>

#include "hetfb/error.hpp"
#include "hetfb/model/network.hpp"
#include "hetfb/optimize/integer.hpp"
#include "hetfb/special/functions.hpp"

namespace hetfb {

/// How negative entries of the closed-form cooperative split are handled.
enum class ClampPolicy {
    resolve,        // drop them and re-solve on the remaining members (budget kept)
    zero_negatives  // set them to zero and keep the others as printed (may overspend)
};

inline FeedbackAllocation uniform_allocation(std::vector<double> bits, double budget) {
    FeedbackAllocation a;
    a.bits = std::move(bits);
    a.budget = budget;
    a.weighting = BudgetWeighting::uniform;
    return a;
}

/// Closed-form split over members l = 2..L:
/// B_l = B_total/(L-1) + (L-1) log2(delta_l / geomean(delta)).
inline FeedbackAllocation partition_coop(const std::vector<double>& deltas, int L, double b_total,
                                         ClampPolicy policy = ClampPolicy::resolve) {
    if (L < 2) throw domain_error("partition_coop: L must be at least 2");
    if (deltas.size() + 1 != static_cast<std::size_t>(L)) throw domain_error("partition_coop: need L-1 deltas");
    if (!(b_total >= 0.0)) throw infeasible_error("partition_coop: negative budget");
    std::vector<double> logd;
    for (double d : deltas) {
        if (!(d > 0.0)) throw domain_error("partition_coop: deltas must be positive");
        logd.push_back(std::log2(d));
    }
    const std::size_t n = deltas.size();
    std::vector<bool> active(n, true);
    std::vector<double> bits(n, 0.0);
    for (;;) {
        const double count = static_cast<double>(std::count(active.begin(), active.end(), true));
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (active[i]) mean += logd[i] / count;
        bool negative = false;
        for (std::size_t i = 0; i < n; ++i) {
            bits[i] = active[i] ? b_total / count + (L - 1.0) * (logd[i] - mean) : 0.0;
            negative = negative || bits[i] < 0.0;
        }
        if (!negative) break;
        if (policy == ClampPolicy::zero_negatives) {
            for (auto& b : bits) b = std::max(b, 0.0);
            break;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (bits[i] < 0.0) active[i] = false;
    }
    return uniform_allocation(std::move(bits), b_total);
}

/// B_2 = .. = B_L = B_total / (L-1).
inline FeedbackAllocation equal_partition_coop(int L, double b_total) {
    return uniform_allocation(std::vector<double>(static_cast<std::size_t>(L - 1), b_total / (L - 1.0)), b_total);
}

/// Threshold-dependent split of B_total - b_home over members l = 2..L
/// holding N_l antennas: minimizes sum_l ln(1 + gamma delta_l 2^{-B_l/(N_l-1)})
/// subject to sum_l B_l = B_total - b_home, B_l >= 0. The multiplier is found
/// by bisection in log space.
inline FeedbackAllocation partition_coop_general(const std::vector<double>& deltas, const std::vector<int>& antennas,
                                                 double b_total, double gamma, double b_home,
                                                 double rel_tol = 1e-12) {
    if (deltas.size() != antennas.size()) throw domain_error("partition_coop_general: one antenna count per member");
    if (!(gamma > 0.0)) throw domain_error("partition_coop_general: gamma must be positive");
    const double b_budget = b_total - b_home;
    if (!(b_home >= 0.0) || !(b_budget >= 0.0))
        throw infeasible_error("partition_coop_general: home feedback exceeds the budget");
    std::vector<double> dof;
    for (int a : antennas) {
        if (a < 2) throw domain_error("partition_coop_general: members need at least 2 antennas");
        dof.push_back(a - 1.0);
    }
    for (double d : deltas)
        if (!(d > 0.0)) throw domain_error("partition_coop_general: deltas must be positive");
    const std::size_t n = deltas.size();
    auto bits_at = [&](double mu) {
        std::vector<double> b(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double inner = std::numbers::ln2 / (mu * dof[i]) - 1.0;
            if (inner > 0.0) b[i] = std::max(0.0, dof[i] * (std::log2(gamma * deltas[i]) + std::log2(inner)));
        }
        return b;
    };
    auto total = [&](double mu) {
        const auto b = bits_at(mu);
        return std::accumulate(b.begin(), b.end(), 0.0);
    };
    if (b_budget == 0.0 || n == 0) return uniform_allocation(std::vector<double>(n, 0.0), b_budget);
    // every entry is zero once mu >= ln2 gamma delta / (dof (1 + gamma delta))
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        hi = std::max(hi, std::numbers::ln2 * gamma * deltas[i] / (dof[i] * (1.0 + gamma * deltas[i])));
    double lo = hi;
    while (total(lo) < b_budget) {
        lo *= 0.5;
        if (lo < 1e-300) throw convergence_error("partition_coop_general: multiplier underflow", lo, lo);
    }
    double llo = std::log(lo), lhi = std::log(hi);
    for (int it = 0; it < 400 && lhi - llo > rel_tol; ++it) {
        const double mid = 0.5 * (llo + lhi);
        (total(std::exp(mid)) > b_budget ? llo : lhi) = mid;
    }
    // exp(lhi) never overspends
    return uniform_allocation(bits_at(std::exp(lhi)), b_budget);
}

/// delta-free split for a single tier: the closed form averaged over the
/// nearest-neighbour distance ratios,
/// B_l = B/(L-1) - beta (L-1) H_{l-1} / (2 ln 2) + beta sum_{j=2}^{L} H_{j-1} / (2 ln 2).
inline std::vector<double> partition_single_tier_expected(int L, double beta, double b_total) {
    if (L < 2) throw domain_error("partition_single_tier_expected: L must be at least 2");
    if (!(beta > 2.0)) throw domain_error("partition_single_tier_expected: beta must exceed 2");
    const double c = beta / (2.0 * std::numbers::ln2);
    double sum_h = 0.0;
    for (int l = 2; l <= L; ++l) sum_h += harmonic(static_cast<std::size_t>(l - 1));
    std::vector<double> b;
    for (int l = 2; l <= L; ++l)
        b.push_back(b_total / (L - 1.0) - c * (L - 1.0) * harmonic(static_cast<std::size_t>(l - 1)) + c * sum_h);
    return b;
}

struct EffectiveClusterSize {
    double lower_bound;  // (ln2/beta) sqrt(2 beta B / ln2 + 1) - ln2/beta + 1
    double asymptotic;   // sqrt(B / beta)
    int exact;           // first L whose size-L expected split gives the last member <= 1 bit
};

inline EffectiveClusterSize effective_cluster_size(double b_total, double beta, int max_size = 100000) {
    if (!(b_total > 0.0)) throw domain_error("effective_cluster_size: budget must be positive");
    if (!(beta > 2.0)) throw domain_error("effective_cluster_size: beta must exceed 2");
    const double r = std::numbers::ln2 / beta;
    EffectiveClusterSize e{r * std::sqrt(2.0 * b_total / r + 1.0) - r + 1.0, std::sqrt(b_total / beta), 0};
    // last entry of the size-L split, with running harmonic sums
    const double c = beta / (2.0 * std::numbers::ln2);
    double h = 0.0, sum_h = 0.0;
    for (int L = 2; L <= max_size; ++L) {
        h += 1.0 / (L - 1.0);
        sum_h += h;
        if (b_total / (L - 1.0) - c * (L - 1.0) * h + c * sum_h <= 1.0) {
            e.exact = L;
            return e;
        }
    }
    throw convergence_error("effective_cluster_size: no cluster size found", max_size, 0.0);
}

struct LineSearchPoint {
    double home_bits;
    double gamma;
    std::vector<double> member_bits;
    double se;
};

struct LineSearchResult {
    double home_bits = 0.0;
    double gamma = 0.0;
    FeedbackAllocation allocation;  // member bits l = 2..L
    double se = 0.0;
    std::vector<LineSearchPoint> evaluated;
};

/// SE of a full allocation: home bits and member bits.
using GeneralEvaluator = std::function<double(double, const std::vector<double>&)>;

/// Heuristic search: sweep the home BS feedback over 0..B_total in
/// unit steps; for each value split the rest with the threshold-dependent
/// rule at every gamma on the grid, round to integers, and keep the best
/// evaluated combination. Identical allocations are evaluated once.
inline LineSearchResult line_search_general(const std::vector<double>& deltas, const std::vector<int>& antennas,
                                            double b_total, const std::vector<double>& gamma_grid,
                                            const GeneralEvaluator& evaluate) {
    if (gamma_grid.empty()) throw domain_error("line_search_general: empty gamma grid");
    LineSearchResult best;
    best.se = -1.0;
    best.allocation = uniform_allocation(std::vector<double>(deltas.size(), 0.0), b_total);
    std::map<std::vector<double>, double> cache;
    const int steps = static_cast<int>(std::floor(b_total + 1e-9));
    for (int home = 0; home <= steps; ++home) {
        for (double gamma : gamma_grid) {
            auto real = partition_coop_general(deltas, antennas, b_total, gamma, home);
            auto ints = integer_round(real, RoundingStrategy::round_and_trim);
            std::vector<double> key = ints.bits;
            key.insert(key.begin(), static_cast<double>(home));
            auto it = cache.find(key);
            const double se = it != cache.end() ? it->second : cache[key] = evaluate(home, ints.bits);
            best.evaluated.push_back({static_cast<double>(home), gamma, ints.bits, se});
            if (se > best.se) {
                best.se = se;
                best.home_bits = home;
                best.gamma = gamma;
                best.allocation = ints;
            }
        }
    }
    return best;
}

/// Default threshold grid for the line search: -5 dB to 20 dB in 2.5 dB steps.
inline std::vector<double> default_gamma_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(std::pow(10.0, (-5.0 + 2.5 * i) / 10.0));
    return g;
}

}  // namespace hetfb
