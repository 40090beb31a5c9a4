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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetfb {

/// Reference density unit: 1e-4/pi BS per square metre.
inline constexpr double kLambdaRef = 1e-4 / std::numbers::pi;

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1000.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// One tier of the marked PPP, linear units throughout.
struct TierParams {
    double density = 1.0;
    double tx_power = 1.0;
    double bias = 1.0;
    int antennas = 1;
    double open_access_prob = 1.0;

    double biased_power() const { return tx_power * bias; }
    bool operator==(const TierParams&) const = default;
};

struct NetworkConfig {
    std::vector<TierParams> tiers;
    double pathloss_exponent = 4.0;

    std::size_t tier_count() const { return tiers.size(); }
    const TierParams& tier(std::size_t k) const {
        if (k >= tiers.size()) throw std::out_of_range("tier index " + std::to_string(k) + " out of range");
        return tiers[k];
    }
    bool operator==(const NetworkConfig&) const = default;
};

/// c_l = (P_l S_l / (P_k S_k))^{2/beta}.
inline double association_weight(const NetworkConfig& cfg, std::size_t source, std::size_t reference) {
    if (source == reference) {
        (void)cfg.tier(source);
        return 1.0;
    }
    const double ratio = cfg.tier(source).biased_power() / cfg.tier(reference).biased_power();
    return std::pow(ratio, 2.0 / cfg.pathloss_exponent);
}

/// Density of tier `source` once mapped onto an equivalent PPP transmitting
/// with the reference tier's biased power.
inline double rescaled_density(const NetworkConfig& cfg, std::size_t source, std::size_t reference) {
    return cfg.tier(source).density * association_weight(cfg, source, reference);
}

inline double equivalent_total_density(const NetworkConfig& cfg, std::size_t reference) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cfg.tier_count(); ++i) sum += rescaled_density(cfg, i, reference);
    return sum;
}

/// Intra-cluster geometry seen by the typical user. deltas[l-2] = delta_{1,l}
/// for l = 2..L; member_tiers are 0-based tier indices of i_1..i_L.
struct ClusterGeometry {
    int size = 2;
    std::vector<double> deltas;
    std::vector<std::size_t> member_tiers;

    std::size_t home_tier() const { return member_tiers.front(); }
    std::size_t furthest_tier() const { return member_tiers.back(); }
    bool operator==(const ClusterGeometry&) const = default;
};

enum class BudgetWeighting { density, uniform };

struct FeedbackAllocation {
    std::vector<double> bits;
    double budget = 0.0;
    BudgetWeighting weighting = BudgetWeighting::uniform;
    std::vector<double> weights;  // per-entry densities when weighting == density

    double weighted_sum() const {
        double s = 0.0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            s += (weighting == BudgetWeighting::density ? weights.at(i) : 1.0) * bits[i];
        return s;
    }
    bool feasible(double slack = 1e-9) const {
        for (double b : bits)
            if (!(b >= 0.0)) return false;
        return weighted_sum() <= budget + slack;
    }
    bool is_integral() const {
        for (double b : bits)
            if (b != std::floor(b)) return false;
        return true;
    }
};

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string field, std::string message) { violations.push_back({std::move(field), std::move(message)}); }
    std::string to_string() const {
        std::string out;
        for (const auto& v : violations) out += v.field + ": " + v.message + "\n";
        return out;
    }
};

/// Checks every invariant of the network (and, if given, the cluster and the
/// allocation). Never throws.
inline ValidationReport validate(const NetworkConfig& cfg, const ClusterGeometry* cluster = nullptr,
                                 const FeedbackAllocation* feedback = nullptr) {
    ValidationReport r;
    if (!(cfg.pathloss_exponent > 2.0)) r.add("network.pathloss_exponent", "pathloss_exponent must exceed 2");
    if (cfg.tiers.empty()) r.add("network.tiers", "at least one tier is required");
    for (std::size_t k = 0; k < cfg.tiers.size(); ++k) {
        const auto& t = cfg.tiers[k];
        const std::string f = "network.tiers[" + std::to_string(k + 1) + "]";
        if (!(t.density > 0.0) || !std::isfinite(t.density)) r.add(f + ".density", "density must be positive");
        if (!(t.tx_power > 0.0) || !std::isfinite(t.tx_power)) r.add(f + ".tx_power", "tx_power must be positive");
        if (!(t.bias > 0.0) || !std::isfinite(t.bias)) r.add(f + ".bias", "bias must be positive");
        if (t.antennas < 1) r.add(f + ".antennas", "antennas must be at least 1");
        if (!(t.open_access_prob > 0.0 && t.open_access_prob <= 1.0))
            r.add(f + ".open_access_prob", "open_access_prob must lie in (0, 1]");
    }
    if (cluster != nullptr) {
        const auto& c = *cluster;
        if (c.size < 2) r.add("cluster.size", "cluster size L must be at least 2");
        if (c.deltas.size() + 1 != static_cast<std::size_t>(std::max(c.size, 0)))
            r.add("cluster.deltas", "expected L-1 = " + std::to_string(c.size - 1) + " entries");
        for (double d : c.deltas)
            if (!(d > 0.0) || !std::isfinite(d)) r.add("cluster.deltas", "every delta must be positive and finite");
        if (c.member_tiers.size() != static_cast<std::size_t>(std::max(c.size, 0)))
            r.add("cluster.member_tiers", "expected L = " + std::to_string(c.size) + " entries");
        bool tiers_ok = true;
        for (std::size_t t : c.member_tiers)
            if (t >= cfg.tiers.size()) {
                r.add("cluster.member_tiers", "tier index " + std::to_string(t + 1) + " does not exist");
                tiers_ok = false;
            }
        bool equal_bias = !cfg.tiers.empty();
        for (const auto& t : cfg.tiers) equal_bias = equal_bias && t.bias == cfg.tiers.front().bias;
        if (equal_bias)
            for (std::size_t i = 1; i < c.deltas.size(); ++i)
                if (c.deltas[i] > c.deltas[i - 1]) {
                    r.add("cluster.deltas", "with equal biases deltas must be nonincreasing");
                    break;
                }
        if (tiers_ok && !cfg.tiers.empty()) {
            int min_n = cfg.tiers.front().antennas;
            for (const auto& t : cfg.tiers) min_n = std::min(min_n, t.antennas);
            if (c.size > min_n)
                r.add("cluster.size", "L = " + std::to_string(c.size) + " exceeds min antennas " +
                                          std::to_string(min_n) + " (L <= min N_k required)");
        }
    }
    if (feedback != nullptr) {
        const auto& fb = *feedback;
        if (!(fb.budget >= 0.0)) r.add("feedback.budget", "budget must be nonnegative");
        for (double b : fb.bits)
            if (!(b >= 0.0)) {
                r.add("feedback.bits", "bits must be nonnegative");
                break;
            }
        if (fb.weighting == BudgetWeighting::density && !fb.bits.empty() && fb.weights.size() != fb.bits.size())
            r.add("feedback.weights", "density weighting needs one weight per entry");
        else if (fb.weighted_sum() > fb.budget + 1e-9)
            r.add("feedback.bits", "weighted bit sum exceeds the budget");
    }
    return r;
}

}  // namespace hetfb
