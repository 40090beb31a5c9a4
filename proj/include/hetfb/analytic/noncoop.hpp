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
#include <numbers>
#include <string>
#include <vector>

#include "hetfb/error.hpp"
#include "hetfb/model/network.hpp"
#include "hetfb/special/functions.hpp"
#include "hetfb/special/hypergeometric.hpp"
#include "hetfb/special/jet.hpp"
#include "hetfb/special/quadrature.hpp"

namespace hetfb {

struct AnalyticOptions {
    QuadratureOptions quadrature{1e-10, 1e-12, 4000, 1.0};
};

namespace detail {

inline double d_term(double x, double beta) { return d_func(x, beta); }
inline Jet d_term(const Jet& x, double beta) { return d_func_jet(x, beta); }
inline double pow_term(double x, double p) { return std::pow(x, p); }
inline Jet pow_term(const Jet& x, double p) { return pow(x, p); }

inline void require_multi_antenna(const NetworkConfig& cfg, std::size_t k) {
    if (cfg.tier(k).antennas < 2)
        throw domain_error("tier " + std::to_string(k + 1) +
                           ": the quantization model needs at least 2 antennas (N_k = 1 is unsupported)");
}

inline void require_bits(double b) {
    if (!(b >= 0.0)) throw domain_error("feedback bits must be nonnegative");
}

/// Per-tier weights lambda_i c_i and bias ratios S_k / S_i seen from tier k.
struct TierView {
    std::vector<double> weight;
    std::vector<double> bias_ratio;
    double total = 0.0;
};

inline TierView tier_view(const NetworkConfig& cfg, std::size_t k) {
    TierView v;
    for (std::size_t i = 0; i < cfg.tier_count(); ++i) {
        v.weight.push_back(rescaled_density(cfg, i, k));
        v.bias_ratio.push_back(cfg.tier(k).bias / cfg.tier(i).bias);
        v.total += v.weight.back();
    }
    return v;
}

/// Conditional Laplace transform of the interference for a fixed
/// quantization error x: Lambda_p / (Lambda_p + sum p_i lambda_i c_i D_i + closed-access term).
template <class S>
S interference_given_error(const S& s_eff, const TierView& v, std::size_t k, double p_k, double beta) {
    const double lambda_p = v.total - (1.0 - p_k) * v.weight[k];
    S den = s_eff * 0.0 + lambda_p;
    for (std::size_t i = 0; i < v.weight.size(); ++i) {
        const double w = i == k ? p_k * v.weight[i] : v.weight[i];
        den += w * d_term(s_eff * v.bias_ratio[i], beta);
    }
    if (p_k < 1.0) {
        // c_k = 1; inaccessible tier-k BSs may sit arbitrarily close
        const double a = 2.0 * std::numbers::pi / beta;
        den += (1.0 - p_k) * v.weight[k] * (a / std::sin(a)) * pow_term(s_eff, 2.0 / beta);
    }
    return lambda_p / den;
}

template <class S>
S laplace_impl(const S& s, const NetworkConfig& cfg, std::size_t k, double bits, double p_k,
               const AnalyticOptions& opt) {
    require_multi_antenna(cfg, k);
    require_bits(bits);
    if (!(value_of(s) >= 0.0)) throw domain_error("laplace_interference: s must be nonnegative");
    if (!(p_k > 0.0 && p_k <= 1.0)) throw domain_error("open-access probability must lie in (0, 1]");
    const TierView v = tier_view(cfg, k);
    const double beta = cfg.pathloss_exponent;
    const double n1 = static_cast<double>(cfg.tier(k).antennas - 1);
    const double delta = std::exp2(-bits / n1);
    if (delta == 0.0) return interference_given_error(s, v, k, p_k, beta);
    // x = delta*w turns 2^B (N-1) x^{N-2} dx into (N-1) w^{N-2} dw on [0, 1]
    auto integrand = [&](double w) {
        const double x = delta * w;
        const S g = interference_given_error(s * (1.0 / (1.0 - x)), v, k, p_k, beta);
        return g * (n1 * std::pow(w, n1 - 1.0));
    };
    return integrate_interval<S>(integrand, 0.0, 1.0, opt.quadrature).value;
}

inline double ccdf_from_jet(const Jet& j) {
    double sum = 0.0;
    for (std::size_t m = 0; m <= j.order(); ++m) sum += (m % 2 == 0 ? 1.0 : -1.0) * j[m];
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace detail

/// Laplace transform of I / cos^2(theta) for a user served by tier k with
/// bits feedback bits, evaluated at s (a double or a Jet in s).
inline double laplace_interference(double s, const NetworkConfig& cfg, std::size_t k, double bits,
                                   const AnalyticOptions& opt = {}) {
    if (s == 0.0) {
        detail::require_multi_antenna(cfg, k);
        detail::require_bits(bits);
        return 1.0;
    }
    return detail::laplace_impl(s, cfg, k, bits, 1.0, opt);
}

inline Jet laplace_interference(const Jet& s, const NetworkConfig& cfg, std::size_t k, double bits,
                                const AnalyticOptions& opt = {}) {
    return detail::laplace_impl(s, cfg, k, bits, 1.0, opt);
}

/// Closed-access counterpart: only a fraction p_k of the tier-k BSs accept
/// the user; all other tiers are open.
inline double laplace_interference_closed_access(double s, const NetworkConfig& cfg, std::size_t k, double bits,
                                                 double p_k, const AnalyticOptions& opt = {}) {
    if (s == 0.0) return 1.0;
    return detail::laplace_impl(s, cfg, k, bits, p_k, opt);
}

inline Jet laplace_interference_closed_access(const Jet& s, const NetworkConfig& cfg, std::size_t k, double bits,
                                              double p_k, const AnalyticOptions& opt = {}) {
    return detail::laplace_impl(s, cfg, k, bits, p_k, opt);
}

/// P[SIR >= gamma] for a user served by tier k. The derivatives of the
/// Laplace transform come from a jet in s = gamma (1 + t), whose t^m
/// coefficient is gamma^m L^(m)(gamma) / m!.
inline double sir_ccdf_noncoop(double gamma, const NetworkConfig& cfg, std::size_t k, double bits,
                               const AnalyticOptions& opt = {}) {
    if (!(gamma > 0.0)) throw domain_error("sir_ccdf_noncoop: gamma must be positive");
    detail::require_multi_antenna(cfg, k);
    const std::size_t order = static_cast<std::size_t>(cfg.tier(k).antennas - 1);
    Jet s(order, gamma);
    if (order > 0) s[1] = gamma;
    return detail::ccdf_from_jet(detail::laplace_impl(s, cfg, k, bits, 1.0, opt));
}

inline double sir_ccdf_noncoop_closed_access(double gamma, const NetworkConfig& cfg, std::size_t k, double bits,
                                             double p_k, const AnalyticOptions& opt = {}) {
    if (!(gamma > 0.0)) throw domain_error("sir_ccdf_noncoop: gamma must be positive");
    detail::require_multi_antenna(cfg, k);
    const std::size_t order = static_cast<std::size_t>(cfg.tier(k).antennas - 1);
    Jet s(order, gamma);
    if (order > 0) s[1] = gamma;
    return detail::ccdf_from_jet(detail::laplace_impl(s, cfg, k, bits, p_k, opt));
}

/// Laplace transform of the MRT desired-signal power |h^* h_hat|^2.
inline double desired_power_laplace(double s, int antennas, double bits) {
    const double q = -std::expm1(-bits / (antennas - 1.0) * std::numbers::ln2);
    return std::exp(-std::log1p(s) - (antennas - 1.0) * std::log1p(s * q));
}

/// Laplace transform of the interference alone (no quantization factor), as
/// used by the ergodic spectral efficiency.
inline double interference_laplace_unit(double z, const NetworkConfig& cfg, std::size_t k) {
    const auto v = detail::tier_view(cfg, k);
    return detail::interference_given_error(z, v, k, 1.0, cfg.pathloss_exponent);
}

/// Ergodic spectral efficiency (bits/s/Hz) of a tier-k user.
inline double ergodic_se_noncoop(const NetworkConfig& cfg, std::size_t k, double bits,
                                 const AnalyticOptions& opt = {}) {
    detail::require_multi_antenna(cfg, k);
    detail::require_bits(bits);
    const auto v = detail::tier_view(cfg, k);
    const double beta = cfg.pathloss_exponent;
    const double n1 = cfg.tier(k).antennas - 1.0;
    const double q = std::isinf(bits) ? 1.0 : -std::expm1(-bits / n1 * std::numbers::ln2);
    auto integrand = [&](double z) {
        if (z == 0.0) return 1.0 + n1 * q;  // limit of (1 - L_S(z)) / z
        const double one_minus = -std::expm1(-std::log1p(z) - n1 * std::log1p(z * q));
        return one_minus / z * detail::interference_given_error(z, v, k, 1.0, beta);
    };
    QuadratureOptions qo = opt.quadrature;
    qo.tail_power = beta / 2.0;
    return std::numbers::log2e * integrate_semi_infinite<double>(integrand, qo).value;
}

/// Mean aggregate interference normalized by the desired path loss.
inline double mean_interference(const NetworkConfig& cfg, std::size_t k) {
    const auto v = detail::tier_view(cfg, k);
    double num = 0.0;
    for (std::size_t i = 0; i < v.weight.size(); ++i) num += v.weight[i] * v.bias_ratio[i];
    return 2.0 * num / ((cfg.pathloss_exponent - 2.0) * v.total);
}

/// log2(1 + (1 - 2^{-B/(N_k-1)}) e^{psi(N_k)} / I_mean).
inline double se_lower_bound(const NetworkConfig& cfg, std::size_t k, double bits) {
    detail::require_multi_antenna(cfg, k);
    detail::require_bits(bits);
    const int n = cfg.tier(k).antennas;
    const double q = std::isinf(bits) ? 1.0 : -std::expm1(-bits / (n - 1.0) * std::numbers::ln2);
    return std::log2(1.0 + q * std::exp(digamma(n)) / mean_interference(cfg, k));
}

/// Area spectral efficiency sum_k lambda_k R_k for per-tier bits.
inline double area_se(const NetworkConfig& cfg, const std::vector<double>& bits, const AnalyticOptions& opt = {}) {
    if (bits.size() != cfg.tier_count()) throw std::invalid_argument("area_se: one bit count per tier expected");
    double sum = 0.0;
    for (std::size_t k = 0; k < bits.size(); ++k) sum += cfg.tier(k).density * ergodic_se_noncoop(cfg, k, bits[k], opt);
    return sum;
}

/// PDF of the serving distance given association with tier k.
inline double association_pdf(double r, const NetworkConfig& cfg, std::size_t k) {
    if (!(r >= 0.0)) return 0.0;
    const double lam = equivalent_total_density(cfg, k);
    return 2.0 * std::numbers::pi * lam * r * std::exp(-std::numbers::pi * lam * r * r);
}

/// Probability that the typical user associates with tier k.
inline double association_probability(const NetworkConfig& cfg, std::size_t k) {
    return cfg.tier(k).density / equivalent_total_density(cfg, k);
}

}  // namespace hetfb
