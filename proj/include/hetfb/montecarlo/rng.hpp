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

#include <cstdint>
#include <random>

namespace hetfb::mc {

using Rng = std::mt19937_64;

/// Trials are grouped in fixed blocks; every block owns its own generator
/// seeded from (seed, block index). The thread that runs a block never
/// matters, so serial and parallel runs produce identical streams.
inline constexpr std::size_t kBlockTrials = 2048;

inline Rng block_rng(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), 0x68657466u};
    return Rng(seq);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline double exponential(Rng& rng) { return std::exponential_distribution<double>(1.0)(rng); }

inline double gamma_unit(double shape, Rng& rng) { return std::gamma_distribution<double>(shape, 1.0)(rng); }

}  // namespace hetfb::mc
