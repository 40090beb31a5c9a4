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

#include "hetfb/error.hpp"

namespace hetfb {

/// Euler–Mascheroni constant (20 significant digits).
inline constexpr double euler_gamma = 0.57721566490153286061;

/// Digamma function for x > 0. Upward recurrence to x >= 10, then the
/// asymptotic series; relative error below 1e-14 across the domain.
inline double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw domain_error("digamma: x must be positive and finite");
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli terms B_2k / (2k x^2k), k = 1..7
    const double series =
        inv2 * (1.0 / 12.0 -
                inv2 * (1.0 / 120.0 -
                        inv2 * (1.0 / 252.0 -
                                inv2 * (1.0 / 240.0 -
                                        inv2 * (1.0 / 132.0 -
                                                inv2 * (691.0 / 32760.0 - inv2 * (1.0 / 12.0)))))));
    return shift + std::log(x) - 0.5 * inv - series;
}

/// H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0. Summed smallest-first.
inline double harmonic(std::size_t n) {
    double h = 0.0;
    for (std::size_t i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
    return h;
}

}  // namespace hetfb
