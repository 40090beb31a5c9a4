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

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "hetfb/analytic/coop.hpp"
#include "hetfb/model/presets.hpp"

namespace {

using namespace hetfb;

CoopCondition fig2_condition(char v, double bits_each) {
    const auto doc = presets::fig2(v);
    CoopCondition c{doc.network(), *doc.cluster(), {}};
    c.bits.assign(static_cast<std::size_t>(c.geometry.size - 1), bits_each);
    return c;
}

CoopCondition single_tier_condition(int L, std::vector<double> deltas, std::vector<double> bits) {
    CoopCondition c;
    c.config.pathloss_exponent = 4.0;
    c.config.tiers = {TierParams{kLambdaRef, 1.0, 1.0, L}};
    c.geometry.size = L;
    c.geometry.deltas = std::move(deltas);
    c.geometry.member_tiers.assign(static_cast<std::size_t>(L), 0);
    c.bits = std::move(bits);
    return c;
}

TEST(LthDistance, PdfNormalizesAndMatchesCdf) {
    const auto cfg = presets::fig2('a').network();
    for (int L : {1, 2, 4, 7})
        for (std::size_t k = 0; k < 3; ++k) {
            const double scale = 1.0 / std::sqrt(std::numbers::pi * equivalent_total_density(cfg, k));
            auto pdf = [&](double r) { return lth_distance_pdf(r, cfg, k, L); };
            const double total = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                pdf, 0.0, 20.0 * scale * std::sqrt(static_cast<double>(L)), 10, 1e-13);
            EXPECT_NEAR(total, 1.0, 1e-10) << L << " " << k;
            for (double x : {0.3, 1.0, 2.5}) {
                const double r = x * scale;
                const double part = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(pdf, 0.0, r, 10, 1e-14);
                EXPECT_NEAR(lth_distance_cdf(r, cfg, k, L), part, 1e-11);
            }
        }
}

TEST(LthDistance, NearestNeighbourCase) {
    const auto cfg = presets::fig2('a').network();
    const double lam = equivalent_total_density(cfg, 1);
    for (double r : {10.0, 200.0, 900.0}) {
        const double x = std::numbers::pi * lam * r * r;
        EXPECT_NEAR(lth_distance_pdf(r, cfg, 1, 1), 2.0 * std::numbers::pi * lam * r * std::exp(-x), 1e-15);
        EXPECT_NEAR(lth_distance_cdf(r, cfg, 1, 1), 1.0 - std::exp(-x), 1e-15);
    }
    EXPECT_EQ(lth_distance_pdf(0.0, cfg, 1, 3), 0.0);
    EXPECT_THROW(lth_distance_pdf(1.0, cfg, 1, 0), domain_error);
}

TEST(OutOfClusterLaplace, ClosedFormAtBetaFour) {
    const auto c = single_tier_condition(3, {0.3, 0.05}, {2.0, 2.0});
    for (double z : {0.01, 1.0, 30.0}) {
        const double a = z * 0.05;
        const double expect = 1.0 / (1.0 + std::sqrt(a) * std::atan(std::sqrt(a)));
        EXPECT_NEAR(out_of_cluster_laplace(z, c.config, 0, 0.05), expect, 1e-12);
    }
}

TEST(CoopCcdf, ProductForm) {
    const auto c = single_tier_condition(3, {0.3, 0.05}, {2.0, 6.0});
    const double g = 2.0;
    const double r1 = 0.3 * std::exp2(-1.0), r2 = 0.05 * std::exp2(-3.0);
    const double a = g * 0.05;
    const double out = 1.0 / (1.0 + std::sqrt(a) * std::atan(std::sqrt(a)));
    EXPECT_NEAR(sir_ccdf_coop(g, c), out * out * out / ((1.0 + g * r1) * (1.0 + g * r2)), 1e-12);
}

TEST(CoopCcdf, MonotoneInThresholdAndBits) {
    for (char v : {'a', 'b'}) {
        auto c = fig2_condition(v, 3.0);
        double prev = 1.0;
        for (double gdb = -10.0; gdb <= 30.0; gdb += 2.5) {
            const double p = sir_ccdf_coop(db_to_linear(gdb), c);
            EXPECT_LE(p, prev);
            EXPECT_GE(p, 0.0);
            prev = p;
        }
        const double base = sir_ccdf_coop(db_to_linear(5.0), c);
        c.bits[0] += 4.0;
        EXPECT_GT(sir_ccdf_coop(db_to_linear(5.0), c), base);
    }
}

TEST(CoopCcdf, PerfectFeedbackLimit) {
    auto c = fig2_condition('a', INFINITY);
    const double g = db_to_linear(3.0);
    const double out = out_of_cluster_laplace(g, c.config, c.furthest_tier(), c.geometry.deltas.back());
    EXPECT_NEAR(sir_ccdf_coop(g, c), std::pow(out, c.geometry.size), 1e-14);
    c.bits.assign(c.bits.size(), 400.0);
    EXPECT_NEAR(sir_ccdf_coop(g, c), std::pow(out, c.geometry.size), 1e-12);
}

TEST(CoopCcdf, PowerScalingCovariance) {
    auto c = fig2_condition('b', 2.5);
    const double g = db_to_linear(7.0);
    const double base = sir_ccdf_coop(g, c);
    for (auto& t : c.config.tiers) t.tx_power *= 37.0;
    EXPECT_NEAR(sir_ccdf_coop(g, c), base, 1e-13);
}

TEST(CoopCcdf, TinyDeltaClamp) {
    const auto a = single_tier_condition(3, {0.3, 1e-300}, {2.0, 2.0});
    const auto b = single_tier_condition(3, {0.3, kMinDelta}, {2.0, 2.0});
    EXPECT_EQ(sir_ccdf_coop(4.0, a), sir_ccdf_coop(4.0, b));
}

TEST(CoopCcdf, RejectsBadConditions) {
    auto c = fig2_condition('a', 1.0);
    c.bits.pop_back();
    EXPECT_THROW(sir_ccdf_coop(1.0, c), domain_error);
    c = fig2_condition('a', 1.0);
    c.bits[1] = -1.0;
    EXPECT_THROW(sir_ccdf_coop(1.0, c), domain_error);
    c = fig2_condition('a', 1.0);
    EXPECT_THROW(sir_ccdf_coop(0.0, c), domain_error);
    c.geometry.deltas[0] = 0.0;
    EXPECT_THROW(sir_ccdf_coop(1.0, c), domain_error);
}

// E[log2(1 + SIR)] = int_0^inf P(SIR > 2^t - 1) dt, evaluated with an
// independent quadrature on the CCDF itself.
double se_from_ccdf(const CoopCondition& c) {
    auto f = [&](double t) {
        const double g = std::expm1(t * std::numbers::ln2);
        if (!std::isfinite(g) || g > 1e280) return 0.0;
        return g <= 0.0 ? 1.0 : sir_ccdf_coop(g, c);
    };
    return boost::math::quadrature::exp_sinh<double>().integrate(f, 1e-12);
}

TEST(CoopSe, MatchesIntegratedCcdf) {
    for (char v : {'a', 'b'})
        for (double b : {0.0, 2.0, 5.0}) {
            const auto c = fig2_condition(v, b);
            EXPECT_NEAR(ergodic_se_coop(c), se_from_ccdf(c), 1e-7) << v << " " << b;
        }
}

TEST(CoopSe, IncreasesWithFeedback) {
    double prev = 0.0;
    for (double b : {0.0, 1.0, 3.0, 6.0, 12.0, double(INFINITY)}) {
        const double se = ergodic_se_coop(fig2_condition('a', b));
        EXPECT_GT(se, prev);
        prev = se;
    }
}

TEST(CoopSe, GeneralFormReducesWithExponentialDesiredPower) {
    // with N = L every member keeps L-1 degrees of freedom and the desired
    // power is exp(1): E[1 - e^{-zX}] = z / (1 + z)
    const auto c = fig2_condition('a', 3.0);
    const double general = ergodic_se_coop_general(c, [](double z) { return z / (1.0 + z); });
    EXPECT_NEAR(general, ergodic_se_coop(c), 1e-8);
}

}  // namespace
