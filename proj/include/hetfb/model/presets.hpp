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

#include <stdexcept>
#include <string>
#include <vector>

#include "hetfb/model/config.hpp"

namespace hetfb::presets {

namespace detail {

inline std::vector<TierSpec> three_tiers(std::vector<int> antennas, std::vector<double> densities) {
    const double power[] = {20.0, 15.0, 10.0};
    const double bias[] = {0.0, 3.0, 5.0};
    std::vector<TierSpec> t;
    for (std::size_t i = 0; i < 3; ++i) t.push_back({densities[i], power[i], bias[i], antennas[i], 1.0});
    return t;
}

}  // namespace detail

/// Non-cooperative 3-tier network of the area-SE comparison. The budget is
/// 10 bits per BS on average (10 * sum of densities, density-weighted).
inline ConfigDocument fig1(char variant) {
    ConfigDocument d;
    d.pathloss_exponent = 4.0;
    const std::vector<double> dens =
        variant == 'a' ? std::vector<double>{0.5, 5.0, 40.0} : std::vector<double>{0.5, 10.0, 80.0};
    d.tiers = detail::three_tiers({8, 6, 6}, dens);
    d.feedback_spec = FeedbackSpec{10.0 * (dens[0] + dens[1] + dens[2]), {}, "density"};
    return d;
}

/// Cooperative 3-tier network with N_k = L. Only the home and the furthest
/// member tiers are fixed by the setting; intermediate members repeat the
/// home tier (they do not enter the analysis).
inline ConfigDocument fig2(char variant) {
    ConfigDocument d;
    d.pathloss_exponent = 4.0;
    const int L = variant == 'a' ? 4 : 5;
    d.tiers = detail::three_tiers({L, L, L}, {1.0, 10.0, 20.0});
    ClusterSpec c;
    c.size = L;
    c.deltas = variant == 'a' ? std::vector<double>{0.1, 0.01, 0.001}
                              : std::vector<double>{0.2, 0.04, 0.008, 0.0016};
    c.member_tiers.assign(static_cast<std::size_t>(L), 1);
    c.member_tiers.back() = 2;
    d.cluster_spec = c;
    d.feedback_spec = FeedbackSpec{10.0, {}, "uniform"};
    return d;
}

/// General-antenna 3-tier network, B_total = 16.
inline ConfigDocument fig3(char variant) {
    ConfigDocument d;
    d.pathloss_exponent = 4.0;
    d.tiers = detail::three_tiers({8, 6, 4}, {1.0, 5.0, 20.0});
    ClusterSpec c;
    c.size = 4;
    c.deltas = {0.1, 0.01, 0.001};
    c.member_tiers = variant == 'a' ? std::vector<int>{2, 3, 2, 1} : std::vector<int>{1, 1, 2, 3};
    d.cluster_spec = c;
    d.feedback_spec = FeedbackSpec{16.0, {}, "uniform"};
    return d;
}

/// Reduced-antenna counterpart of fig3: every tier uses N_k = L.
inline ConfigDocument fig3_reduced(char variant) {
    ConfigDocument d = fig3(variant);
    for (auto& t : d.tiers) t.antennas = d.cluster_spec->size;
    return d;
}

/// Single-tier network, N = L = 4.
inline ConfigDocument fig4(char variant) {
    ConfigDocument d;
    d.pathloss_exponent = 4.0;
    d.tiers = {TierSpec{1.0, 20.0, 0.0, 4, 1.0}};
    ClusterSpec c;
    c.size = 4;
    c.deltas = variant == 'a' ? std::vector<double>{0.2, 0.04, 0.008} : std::vector<double>{0.05, 0.0025, 0.0001};
    c.member_tiers = {1, 1, 1, 1};
    d.cluster_spec = c;
    d.feedback_spec = FeedbackSpec{10.0, {}, "uniform"};
    return d;
}

/// Looks up "fig1a" .. "fig4b" (and "fig3a-reduced", "fig3b-reduced").
inline ConfigDocument by_name(const std::string& name) {
    if (name.size() >= 5 && name.rfind("fig", 0) == 0) {
        const char n = name[3];
        const char v = name[4];
        if (v == 'a' || v == 'b') {
            const std::string rest = name.substr(5);
            if (rest.empty()) {
                switch (n) {
                    case '1': return fig1(v);
                    case '2': return fig2(v);
                    case '3': return fig3(v);
                    case '4': return fig4(v);
                    default: break;
                }
            } else if (rest == "-reduced" && n == '3') {
                return fig3_reduced(v);
            }
        }
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

inline std::vector<std::string> names() {
    return {"fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig3a-reduced", "fig3b-reduced", "fig4a", "fig4b"};
}

}  // namespace hetfb::presets
