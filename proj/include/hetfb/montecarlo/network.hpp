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
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "hetfb/error.hpp"
#include "hetfb/model/network.hpp"
#include "hetfb/montecarlo/rng.hpp"

namespace hetfb::mc {

struct Point {
    double x;
    double y;
    double distance() const { return std::hypot(x, y); }
};

/// One draw of every tier inside a disk of radius `radius` around the user.
struct NetworkRealization {
    double radius = 0.0;
    std::vector<std::vector<Point>> tiers;

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& t : tiers) n += t.size();
        return n;
    }
};

/// 20 / sqrt(smallest association-equivalent density).
inline double default_simulation_radius(const NetworkConfig& cfg) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cfg.tier_count(); ++k) m = std::min(m, equivalent_total_density(cfg, k));
    return 20.0 / std::sqrt(m);
}

/// Disk radius that holds the L strongest (biased) BSs unless
/// pi Lambda r_L^2 exceeds 2L + tail for the L-th one, i.e. with probability
/// about e^{-tail}. Much smaller than the default when only the cluster
/// matters.
inline double coverage_radius(const NetworkConfig& cfg, int L, double tail = 40.0) {
    const double r2 = (2.0 * L + tail) / (std::numbers::pi * equivalent_total_density(cfg, 0));
    double stretch = 1.0;
    for (std::size_t i = 0; i < cfg.tier_count(); ++i)
        stretch = std::max(stretch, cfg.tier(i).biased_power() / cfg.tier(0).biased_power());
    return std::sqrt(r2) * std::pow(stretch, 1.0 / cfg.pathloss_exponent);
}

inline NetworkRealization sample_network(const NetworkConfig& cfg, double radius, Rng& rng) {
    if (!(radius > 0.0)) throw domain_error("sample_network: radius must be positive");
    NetworkRealization r;
    r.radius = radius;
    const double area = std::numbers::pi * radius * radius;
    for (const auto& t : cfg.tiers) {
        std::vector<Point> pts;
        const double mean = t.density * area;
        if (mean > 0.0) {
            const auto n = std::poisson_distribution<long long>(mean)(rng);
            pts.reserve(static_cast<std::size_t>(n));
            for (long long i = 0; i < n; ++i) {
                const double rho = radius * std::sqrt(uniform01(rng));
                const double phi = 2.0 * std::numbers::pi * uniform01(rng);
                pts.push_back({rho * std::cos(phi), rho * std::sin(phi)});
            }
        }
        r.tiers.push_back(std::move(pts));
    }
    return r;
}

struct ClusterMember {
    std::size_t tier;
    std::size_t index;
    double distance;
    double biased_power;  // P S d^{-beta}
};

struct ClusterSample {
    std::vector<ClusterMember> members;  // i_1 .. i_L, strongest first
    std::vector<double> deltas;          // delta_{1,l}, l = 2..L

    ClusterGeometry geometry() const {
        ClusterGeometry g;
        g.size = static_cast<int>(members.size());
        g.deltas = deltas;
        for (const auto& m : members) g.member_tiers.push_back(m.tier);
        return g;
    }
};

/// The L base stations with the largest biased received power, in
/// descending order, and the unbiased power ratios to the home BS.
inline ClusterSample associate_and_cluster(const NetworkRealization& r, const NetworkConfig& cfg, int L) {
    if (L < 1) throw domain_error("associate_and_cluster: L must be at least 1");
    if (r.size() < static_cast<std::size_t>(L)) throw domain_error("associate_and_cluster: fewer points than L");
    const double beta = cfg.pathloss_exponent;
    std::vector<ClusterMember> all;
    all.reserve(r.size());
    for (std::size_t k = 0; k < r.tiers.size(); ++k) {
        const double ps = cfg.tier(k).biased_power();
        for (std::size_t i = 0; i < r.tiers[k].size(); ++i) {
            const double d = r.tiers[k][i].distance();
            all.push_back({k, i, d, ps * std::pow(d, -beta)});
        }
    }
    std::partial_sort(all.begin(), all.begin() + L, all.end(),
                      [](const ClusterMember& a, const ClusterMember& b) { return a.biased_power > b.biased_power; });
    ClusterSample s;
    s.members.assign(all.begin(), all.begin() + L);
    auto raw = [&](const ClusterMember& m) { return cfg.tier(m.tier).tx_power * std::pow(m.distance, -beta); };
    for (int l = 1; l < L; ++l) s.deltas.push_back(raw(s.members[l]) / raw(s.members[0]));
    return s;
}

}  // namespace hetfb::mc
