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
#include <numbers>
#include <vector>

#include "hetfb/analytic/noncoop.hpp"
#include "hetfb/error.hpp"
#include "hetfb/model/network.hpp"
#include "hetfb/special/functions.hpp"

namespace hetfb {

struct WaterfillResult {
    FeedbackAllocation allocation;
    double multiplier = 0.0;  // water level t = -1/mu
    std::vector<std::size_t> active_set;
    int iterations = 0;
};

namespace detail {

struct NoncoopTerms {
    double dof;     // N_k - 1
    double gain;    // e^{psi(N_k)}
    double interf;  // I_mean seen from tier k
};

inline std::vector<NoncoopTerms> noncoop_terms(const NetworkConfig& cfg) {
    std::vector<NoncoopTerms> t;
    for (std::size_t k = 0; k < cfg.tier_count(); ++k) {
        const int n = cfg.tier(k).antennas;
        if (n < 2) throw domain_error("partition_noncoop: every tier needs at least 2 antennas");
        t.push_back({n - 1.0, std::exp(digamma(n)), mean_interference(cfg, k)});
    }
    return t;
}

inline double noncoop_bits(const NoncoopTerms& t, double level) {
    const double arg = t.gain * (t.dof + level) / (t.dof * (t.gain + t.interf));
    return arg > 1.0 ? t.dof * std::log2(arg) : 0.0;
}

}  // namespace detail

/// Per-tier bits at water level t (clamped at zero).
inline std::vector<double> noncoop_bits_at_level(const NetworkConfig& cfg, double level) {
    std::vector<double> b;
    for (const auto& t : detail::noncoop_terms(cfg)) b.push_back(detail::noncoop_bits(t, level));
    return b;
}

/// Marginal lower-bound rate per bit of tier k,
/// 2^{-B/(N-1)} e^{psi(N)} / ((N-1)(I_mean + (1 - 2^{-B/(N-1)}) e^{psi(N)})) / ln 2.
/// Water-filling equalizes it across tiers that receive feedback.
inline double noncoop_marginal(const NetworkConfig& cfg, std::size_t k, double bits) {
    const int n = cfg.tier(k).antennas;
    const double e = std::exp(digamma(n));
    const double r = std::exp2(-bits / (n - 1.0));
    return r * e / ((n - 1.0) * (mean_interference(cfg, k) + (1.0 - r) * e));
}

/// Whether tier k gets at least one bit at water level t.
inline bool noncoop_feedback_useful(const NetworkConfig& cfg, std::size_t k, double level) {
    const int n = cfg.tier(k).antennas;
    const double n1 = n - 1.0;
    return std::exp(digamma(n)) * ((n1 + level) * std::exp2(-1.0 / n1) / n1 - 1.0) >= mean_interference(cfg, k);
}

/// Water-filling split of a per-area budget sum_k lambda_k B_k <= B_total
/// maximizing the lower bound on the area spectral efficiency. The water
/// level is found by bisection; tiers whose bits would be negative get none.
inline WaterfillResult partition_noncoop(const NetworkConfig& cfg, double b_total, double rel_tol = 1e-12) {
    if (!(b_total >= 0.0)) throw infeasible_error("partition_noncoop: negative budget");
    const auto terms = detail::noncoop_terms(cfg);
    const std::size_t K = terms.size();
    auto spent = [&](double level) {
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k) s += cfg.tier(k).density * detail::noncoop_bits(terms[k], level);
        return s;
    };
    WaterfillResult res;
    res.allocation.budget = b_total;
    res.allocation.weighting = BudgetWeighting::density;
    for (const auto& t : cfg.tiers) res.allocation.weights.push_back(t.density);
    res.allocation.bits.assign(K, 0.0);
    if (b_total == 0.0) return res;

    double lo = 0.0;
    double hi = 1.0;
    while (spent(hi) < b_total) {
        lo = hi;
        hi *= 2.0;
        ++res.iterations;
        if (!std::isfinite(hi)) throw convergence_error("partition_noncoop: water level diverged", hi, hi);
    }
    while (hi - lo > rel_tol * hi && res.iterations < 2000) {
        const double mid = 0.5 * (lo + hi);
        (spent(mid) < b_total ? lo : hi) = mid;
        ++res.iterations;
    }
    // lo never overspends
    res.multiplier = lo;
    for (std::size_t k = 0; k < K; ++k) res.allocation.bits[k] = detail::noncoop_bits(terms[k], lo);
    for (std::size_t k = 0; k < K; ++k)
        if (res.allocation.bits[k] > 0.0) res.active_set.push_back(k);
    return res;
}

/// The per-tier-equal baseline B_k = B_total / K / lambda_k.
inline FeedbackAllocation equal_partition_noncoop(const NetworkConfig& cfg, double b_total) {
    FeedbackAllocation a;
    a.budget = b_total;
    a.weighting = BudgetWeighting::density;
    const double K = static_cast<double>(cfg.tier_count());
    for (const auto& t : cfg.tiers) {
        a.weights.push_back(t.density);
        a.bits.push_back(b_total / K / t.density);
    }
    return a;
}

}  // namespace hetfb
