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
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "hetfb/error.hpp"
#include "hetfb/model/network.hpp"

namespace hetfb {

enum class RoundingStrategy { round_and_trim, floor_and_greedy };

/// Objective to maximize over integer allocations (e.g. an SE evaluator).
using AllocationObjective = std::function<double(const std::vector<double>&)>;

/// Integer post-processing of a real allocation.
///
/// round_and_trim: round every entry, then remove bits until the weighted sum
/// fits. With an objective the removed bit is the one costing least; without
/// one it is the entry rounded up the most.
/// floor_and_greedy: floor every entry, then add bits one at a time to the
/// entry with the largest objective gain (largest fractional part without an
/// objective) while the budget allows.
inline FeedbackAllocation integer_round(const FeedbackAllocation& real, RoundingStrategy strategy,
                                        const AllocationObjective& objective = {}) {
    const std::size_t n = real.bits.size();
    auto weight = [&](std::size_t i) { return real.weighting == BudgetWeighting::density ? real.weights.at(i) : 1.0; };
    const double slack = 1e-9 * std::max(1.0, std::abs(real.budget));
    FeedbackAllocation out = real;
    if (real.is_integral() && real.feasible(slack)) return out;

    if (strategy == RoundingStrategy::round_and_trim) {
        for (auto& b : out.bits) b = std::max(0.0, std::round(b));
        while (out.weighted_sum() > real.budget + slack) {
            std::size_t pick = n;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                if (out.bits[i] < 1.0) continue;
                double score;
                if (objective) {
                    auto trial = out.bits;
                    trial[i] -= 1.0;
                    score = objective(trial);
                } else {
                    score = out.bits[i] - real.bits[i];  // most over-rounded first
                }
                if (score > best) {
                    best = score;
                    pick = i;
                }
            }
            if (pick == n) throw infeasible_error("integer_round: cannot meet the budget");
            out.bits[pick] -= 1.0;
        }
        return out;
    }

    for (auto& b : out.bits) b = std::max(0.0, std::floor(b + 1e-12));
    for (;;) {
        std::size_t pick = n;
        double best = -std::numeric_limits<double>::infinity();
        const double base = objective ? objective(out.bits) : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (out.weighted_sum() + weight(i) > real.budget + slack) continue;
            double score;
            if (objective) {
                auto trial = out.bits;
                trial[i] += 1.0;
                score = objective(trial) - base;
            } else {
                score = real.bits[i] - out.bits[i];
            }
            if (score > best) {
                best = score;
                pick = i;
            }
        }
        if (pick == n) break;
        if (!objective && best <= 0.0) break;
        out.bits[pick] += 1.0;
    }
    return out;
}

}  // namespace hetfb
