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
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "hetfb/analytic/coop.hpp"
#include "hetfb/error.hpp"
#include "hetfb/model/network.hpp"
#include "hetfb/montecarlo/channel.hpp"
#include "hetfb/montecarlo/network.hpp"
#include "hetfb/montecarlo/parallel.hpp"
#include "hetfb/montecarlo/rng.hpp"

namespace hetfb::mc {

struct SimulationEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    bool covers(double x) const { return std::abs(x - mean) <= half_width_95; }

    /// Score (Wilson) test for a proportion: the plug-in half-width collapses
    /// to zero when every trial agrees, this one does not.
    bool covers_proportion(double p) const {
        return std::abs(p - mean) <= 1.96 * std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
    }
};

/// Running sums for one scalar statistic.
struct Tally {
    double sum = 0.0;
    double sum2 = 0.0;
    std::size_t n = 0;

    void add(double x) {
        sum += x;
        sum2 += x * x;
        ++n;
    }
    void merge(const Tally& o) {
        sum += o.sum;
        sum2 += o.sum2;
        n += o.n;
    }
    SimulationEstimate estimate(std::uint64_t seed) const {
        SimulationEstimate e;
        e.trials = n;
        e.seed = seed;
        if (n == 0) return e;
        e.mean = sum / n;
        if (n > 1) {
            const double var = std::max(0.0, (sum2 - sum * e.mean) / (n - 1.0));
            e.half_width_95 = 1.96 * std::sqrt(var / n);
        }
        return e;
    }
};

struct SimulationOptions {
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: hardware concurrency
    double radius = 0.0;   // rejection sampling only; 0 picks default_simulation_radius
};

/// CCDF estimates on a threshold grid plus the ergodic SE, all from the same trials.
struct SirStatistics {
    std::vector<double> gamma;
    std::vector<SimulationEstimate> ccdf;
    SimulationEstimate se;
    double acceptance_rate = 1.0;
};

namespace detail {

struct BlockTallies {
    std::vector<Tally> ccdf;
    Tally se;
    std::size_t attempts = 0;
};

inline void record(BlockTallies& t, const std::vector<double>& gamma, double sir) {
    for (std::size_t g = 0; g < gamma.size(); ++g) t.ccdf[g].add(sir > gamma[g] ? 1.0 : 0.0);
    t.se.add(std::log2(1.0 + sir));
}

/// Runs `trial(rng, tallies)` until each block holds its quota of accepted
/// trials and reduces the blocks in index order.
template <class Trial>
SirStatistics run_trials(const std::vector<double>& gamma, const SimulationOptions& opt, Trial&& trial) {
    if (opt.trials < 1) throw domain_error("simulation needs at least one trial");
    for (double g : gamma)
        if (!(g > 0.0)) throw domain_error("thresholds must be positive");
    const std::size_t blocks = (opt.trials + kBlockTrials - 1) / kBlockTrials;
    auto per_block = [&](std::size_t b) {
        BlockTallies t;
        t.ccdf.resize(gamma.size());
        const std::size_t quota = std::min(kBlockTrials, opt.trials - b * kBlockTrials);
        Rng rng = block_rng(opt.seed, b);
        while (t.se.n < quota) {
            ++t.attempts;
            if (t.attempts > 10000 * quota) throw convergence_error("rejection sampling starved", 0.0, 0.0);
            trial(rng, t);
        }
        return t;
    };
    const auto parts = run_blocks<BlockTallies>(blocks, per_block, opt.threads);
    BlockTallies total;
    total.ccdf.resize(gamma.size());
    for (const auto& p : parts) {
        for (std::size_t g = 0; g < gamma.size(); ++g) total.ccdf[g].merge(p.ccdf[g]);
        total.se.merge(p.se);
        total.attempts += p.attempts;
    }
    SirStatistics s;
    s.gamma = gamma;
    for (const auto& c : total.ccdf) s.ccdf.push_back(c.estimate(opt.seed));
    s.se = total.se.estimate(opt.seed);
    s.acceptance_rate = static_cast<double>(total.se.n) / static_cast<double>(total.attempts);
    return s;
}

/// Interferers outside the exclusion radii seen from a user whose reference
/// BS (tier k, at distance R) has pi Lambda_k R^2 = mass. Points are drawn
/// out to far_field_ratio times each exclusion radius; the rest enters
/// through its Campbell mean. Powers are relative to the reference BS.
class OutOfClusterSampler {
public:
    OutOfClusterSampler(const NetworkConfig& cfg, std::size_t k) : beta_(cfg.pathloss_exponent) {
        const double total = equivalent_total_density(cfg, k);
        rho2_ = std::pow(far_field_ratio(beta_), 2.0);
        for (std::size_t i = 0; i < cfg.tier_count(); ++i) {
            weight_.push_back(cfg.tier(i).density * association_weight(cfg, i, k) / total);
            scale_.push_back(cfg.tier(k).bias / cfg.tier(i).bias);
        }
        far_ = 2.0 * std::pow(rho2_, 1.0 - beta_ / 2.0) / (beta_ - 2.0);
    }

    /// rho with rho^{2-2 beta} = 1e-6: the omitted part's variance is
    /// negligible next to its mean.
    static double far_field_ratio(double beta) { return std::pow(10.0, 3.0 / (beta - 1.0)); }

    double operator()(double mass, Rng& rng) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < weight_.size(); ++i) {
            const double m = mass * weight_[i];
            if (m <= 0.0) continue;
            const auto n = std::poisson_distribution<long long>(m * (rho2_ - 1.0))(rng);
            double tier = 0.0;
            for (long long j = 0; j < n; ++j) {
                const double u2 = 1.0 + (rho2_ - 1.0) * uniform01(rng);
                tier += std::pow(u2, -beta_ / 2.0) * exponential(rng);
            }
            acc += scale_[i] * (tier + m * far_);
        }
        return acc;
    }

private:
    double beta_;
    double rho2_;
    double far_;
    std::vector<double> weight_;
    std::vector<double> scale_;
};

}  // namespace detail

enum class NoncoopSampling {
    conditioned,  // serving distance drawn from its tier-k law, interferers outside the exclusion radii
    rejection     // whole network in a disk, trials kept only when the user joins tier k
};

/// SIR statistics of a tier-k user with MRT on a B-bit quantized channel.
inline SirStatistics estimate_noncoop(const NetworkConfig& cfg, std::size_t k, double bits,
                                      const std::vector<double>& gamma, const SimulationOptions& opt = {},
                                      NoncoopSampling sampling = NoncoopSampling::conditioned) {
    if (auto rep = validate(cfg); !rep.ok()) throw domain_error(rep.to_string());
    const int n = cfg.tier(k).antennas;
    if (n < 2) throw domain_error("estimate_noncoop: serving tier needs at least 2 antennas");
    auto desired = [&](Rng& rng) { return gamma_unit(n, rng) * (1.0 - sample_quantization_error(bits, n, rng)); };

    if (sampling == NoncoopSampling::conditioned) {
        const detail::OutOfClusterSampler out(cfg, k);
        return detail::run_trials(gamma, opt, [&](Rng& rng, detail::BlockTallies& t) {
            const double mass = exponential(rng);
            const double s = desired(rng);
            detail::record(t, gamma, s / out(mass, rng));
        });
    }
    const double radius = opt.radius > 0.0 ? opt.radius : default_simulation_radius(cfg);
    const double beta = cfg.pathloss_exponent;
    return detail::run_trials(gamma, opt, [&](Rng& rng, detail::BlockTallies& t) {
        const auto net = sample_network(cfg, radius, rng);
        if (net.size() == 0) return;
        const auto c = associate_and_cluster(net, cfg, 1);
        const auto& home = c.members.front();
        if (home.tier != k) return;
        const double ref = cfg.tier(k).tx_power * std::pow(home.distance, -beta);
        double interference = 0.0;
        for (std::size_t i = 0; i < net.tiers.size(); ++i)
            for (std::size_t j = 0; j < net.tiers[i].size(); ++j) {
                if (i == home.tier && j == home.index) continue;
                interference +=
                    cfg.tier(i).tx_power * std::pow(net.tiers[i][j].distance(), -beta) * exponential(rng);
            }
        detail::record(t, gamma, desired(rng) * ref / interference);
    });
}

enum class CoopMode {
    reduced,  // every cluster BS uses L antennas and zero-forcing; no home feedback
    general   // all antennas, coordinated beamforming, home BS quantizes with home_bits
};

/// Member l's residual intra-cluster gain |h^* v|^2: its beamformer nulls the
/// typical user's quantized channel and L-2 other users (independent
/// isotropic directions).
inline double sample_residual_gain(int antennas, int L, double bits, CoopMode mode, Rng& rng) {
    const ComplexVector h = complex_gaussian(antennas, rng);
    std::vector<ComplexVector> constraints{quantize_direction(h, bits, rng).direction};
    for (int j = 0; j < L - 2; ++j) constraints.push_back(isotropic_unit(antennas, rng));
    const ComplexVector v = mode == CoopMode::reduced
                                ? zf_beamformer(constraints, antennas, rng)
                                : cb_beamformer(isotropic_unit(antennas, rng), constraints, rng);
    return gain(h, v);
}

/// Desired gain of the home BS under coordinated beamforming: steer toward
/// the quantized channel inside the null space of the L-1 other users.
inline double sample_cb_desired_gain(int antennas, int L, double bits, Rng& rng) {
    const ComplexVector h = complex_gaussian(antennas, rng);
    const auto q = quantize_direction(h, bits, rng);
    std::vector<ComplexVector> constraints;
    for (int j = 0; j < L - 1; ++j) constraints.push_back(isotropic_unit(antennas, rng));
    return gain(h, cb_beamformer(q.direction, constraints, rng));
}

/// SIR statistics of the cooperative link at fixed intra-cluster geometry.
inline SirStatistics estimate_coop_conditioned(const CoopCondition& c, const std::vector<double>& gamma,
                                               const SimulationOptions& opt = {}, CoopMode mode = CoopMode::reduced,
                                               double home_bits = 0.0) {
    check_condition(c);
    const int L = c.cluster_size();
    const auto& g = c.geometry;
    const detail::OutOfClusterSampler out(c.config, c.furthest_tier());
    const double delta_last = std::max(g.deltas.back(), kMinDelta);
    std::vector<int> dims;
    for (std::size_t l = 1; l < g.member_tiers.size(); ++l)
        dims.push_back(mode == CoopMode::reduced ? L : c.config.tier(g.member_tiers[l]).antennas);
    const int home_dim = c.config.tier(c.home_tier()).antennas;
    return detail::run_trials(gamma, opt, [&](Rng& rng, detail::BlockTallies& t) {
        const double mass = gamma_unit(L, rng);
        double interference = delta_last * out(mass, rng);
        for (std::size_t l = 0; l < dims.size(); ++l)
            interference += g.deltas[l] * sample_residual_gain(dims[l], L, c.bits[l], mode, rng);
        const double s = mode == CoopMode::reduced ? exponential(rng) : sample_cb_desired_gain(home_dim, L, home_bits, rng);
        detail::record(t, gamma, s / interference);
    });
}

/// Samples of the home BS's coordinated-beamforming gain, sorted.
inline std::vector<double> cb_desired_samples(int antennas, int L, double bits, std::size_t count,
                                              std::uint64_t seed, unsigned threads = 0) {
    const std::size_t blocks = (count + kBlockTrials - 1) / kBlockTrials;
    const auto parts = run_blocks<std::vector<double>>(
        blocks,
        [&](std::size_t b) {
            Rng rng = block_rng(seed, b);
            std::vector<double> v(std::min(kBlockTrials, count - b * kBlockTrials));
            for (auto& x : v) x = sample_cb_desired_gain(antennas, L, bits, rng);
            return v;
        },
        threads);
    std::vector<double> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    return all;
}

/// Ergodic SE with all antennas: the closed-form interference terms of the
/// general-antenna expression, averaged over sampled desired gains.
inline double semi_analytic_se_general(const CoopCondition& c, const std::vector<double>& desired_samples,
                                       const AnalyticOptions& opt = {}) {
    if (desired_samples.empty()) throw domain_error("semi_analytic_se_general: no samples");
    const double n = static_cast<double>(desired_samples.size());
    auto complement = [&](double z) {
        double acc = 0.0;
        for (double x : desired_samples) acc -= std::expm1(-z * x);
        return acc / n;
    };
    return ergodic_se_coop_general(c, complement, opt);
}

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (i + 1.0) / n - f, f - i / n});
    }
    return d;
}

/// Asymptotic KS critical value: reject at level alpha when D exceeds it.
inline double ks_critical(std::size_t n, double alpha = 0.01) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

/// Asymptotic KS p-value with Stephens' small-sample correction.
inline double ks_p_value(double d, std::size_t n) {
    const double rn = std::sqrt(static_cast<double>(n));
    const double t = (rn + 0.12 + 0.11 / rn) * d;
    if (t < 0.2) return 1.0;
    double p = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * t * t);
        p += (j % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace hetfb::mc
