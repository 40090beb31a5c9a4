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
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hetfb/analytic/noncoop.hpp"
#include "hetfb/error.hpp"
#include "hetfb/model/network.hpp"
#include "hetfb/special/hypergeometric.hpp"
#include "hetfb/special/quadrature.hpp"

namespace hetfb {

/// Everything the cooperative expressions condition on. bits[l-2] is the
/// feedback sent to cluster member i_l, l = 2..L; the home BS gets none in
/// the reduced-antenna regime.
struct CoopCondition {
    NetworkConfig config;
    ClusterGeometry geometry;
    std::vector<double> bits;

    std::size_t home_tier() const { return geometry.home_tier(); }
    std::size_t furthest_tier() const { return geometry.furthest_tier(); }
    int cluster_size() const { return geometry.size; }
};

inline constexpr double kMinDelta = 1e-12;

inline void check_condition(const CoopCondition& c) {
    auto report = validate(c.config, &c.geometry);
    if (!report.ok()) throw domain_error("invalid cooperative condition: " + report.to_string());
    if (c.bits.size() + 1 != static_cast<std::size_t>(c.geometry.size))
        throw domain_error("cooperative condition needs L-1 feedback entries");
    for (double b : c.bits)
        if (!(b >= 0.0)) throw domain_error("feedback bits must be nonnegative");
}

/// PDF of the distance to the L-th strongest (biased) BS when it belongs to tier k.
inline double lth_distance_pdf(double r, const NetworkConfig& cfg, std::size_t k, int L) {
    if (L < 1) throw domain_error("lth_distance_pdf: L must be at least 1");
    if (!(r > 0.0)) return 0.0;
    const double x = std::numbers::pi * equivalent_total_density(cfg, k) * r * r;
    return 2.0 / r * std::exp(L * std::log(x) - x - std::lgamma(static_cast<double>(L)));
}

/// CDF of the same law: the regularized lower incomplete gamma P(L, pi Lambda r^2).
inline double lth_distance_cdf(double r, const NetworkConfig& cfg, std::size_t k, int L) {
    if (L < 1) throw domain_error("lth_distance_cdf: L must be at least 1");
    if (!(r > 0.0)) return 0.0;
    const double x = std::numbers::pi * equivalent_total_density(cfg, k) * r * r;
    double term = 1.0;
    double tail = 1.0;
    for (int j = 1; j < L; ++j) {
        term *= x / j;
        tail += term;
    }
    return std::clamp(-std::expm1(-x) - std::exp(-x) * (tail - 1.0), 0.0, 1.0);
}

/// Laplace transform of the out-of-cluster interference for one unit of the
/// L-fold product, i.e. Lambda / (Lambda + sum lambda_i c_i D(z delta_L S_k/S_i)).
inline double out_of_cluster_laplace(double z, const NetworkConfig& cfg, std::size_t k, double delta_last) {
    const auto v = detail::tier_view(cfg, k);
    return detail::interference_given_error(z * std::max(delta_last, kMinDelta), v, k, 1.0, cfg.pathloss_exponent);
}

/// prod_l 1 / (1 + z delta_l 2^{-B_l / d_l}); d_l = L-1 for the reduced
/// regime, N_{pi(i_l)}-1 with extra antennas.
inline double intra_cluster_product(double z, const std::vector<double>& deltas, const std::vector<double>& bits,
                                    const std::vector<double>& dof) {
    double log_prod = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double residual = std::isinf(bits[i]) ? 0.0 : std::exp2(-bits[i] / dof[i]);
        log_prod -= std::log1p(z * std::max(deltas[i], kMinDelta) * residual);
    }
    return std::exp(log_prod);
}

namespace detail {

inline std::vector<double> reduced_dof(const CoopCondition& c) {
    return std::vector<double>(c.bits.size(), c.geometry.size - 1.0);
}

inline std::vector<double> member_dof(const CoopCondition& c) {
    std::vector<double> d;
    for (std::size_t l = 1; l < c.geometry.member_tiers.size(); ++l)
        d.push_back(c.config.tier(c.geometry.member_tiers[l]).antennas - 1.0);
    return d;
}

}  // namespace detail

/// Conditioned SIR CCDF of the cooperative (reduced-antenna) case.
inline double sir_ccdf_coop(double gamma, const CoopCondition& c) {
    if (!(gamma > 0.0)) throw domain_error("sir_ccdf_coop: gamma must be positive");
    check_condition(c);
    const double intra = intra_cluster_product(gamma, c.geometry.deltas, c.bits, detail::reduced_dof(c));
    const double out = out_of_cluster_laplace(gamma, c.config, c.furthest_tier(), c.geometry.deltas.back());
    return std::clamp(intra * std::pow(out, c.geometry.size), 0.0, 1.0);
}

/// Ergodic spectral efficiency of the cooperative (reduced-antenna) case.
inline double ergodic_se_coop(const CoopCondition& c, const AnalyticOptions& opt = {}) {
    check_condition(c);
    const auto dof = detail::reduced_dof(c);
    const std::size_t k = c.furthest_tier();
    const double delta_last = c.geometry.deltas.back();
    const int L = c.geometry.size;
    auto integrand = [&](double z) {
        const double intra = intra_cluster_product(z, c.geometry.deltas, c.bits, dof);
        return intra * std::pow(out_of_cluster_laplace(z, c.config, k, delta_last), L) / (1.0 + z);
    };
    return std::numbers::log2e * integrate_semi_infinite<double>(integrand, opt.quadrature).value;
}

/// Ergodic spectral efficiency when members use all their antennas. The
/// caller supplies z -> E[1 - exp(-z X)] for the desired power X (it has no
/// closed form under coordinated beamforming); member residuals decay with
/// N_{pi(i_l)} - 1.
inline double ergodic_se_coop_general(const CoopCondition& c, const std::function<double(double)>& desired_complement,
                                      const AnalyticOptions& opt = {}) {
    check_condition(c);
    const auto dof = detail::member_dof(c);
    const std::size_t k = c.furthest_tier();
    const double delta_last = c.geometry.deltas.back();
    const int L = c.geometry.size;
    auto integrand = [&](double z) {
        const double intra = intra_cluster_product(z, c.geometry.deltas, c.bits, dof);
        const double gain = z == 0.0 ? 0.0 : desired_complement(z) / z;
        return gain * intra * std::pow(out_of_cluster_laplace(z, c.config, k, delta_last), L);
    };
    return std::numbers::log2e * integrate_semi_infinite<double>(integrand, opt.quadrature).value;
}

}  // namespace hetfb
