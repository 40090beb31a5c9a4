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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hetfb/analytic/coop.hpp"
#include "hetfb/analytic/noncoop.hpp"
#include "hetfb/cli/figures.hpp"
#include "hetfb/model/presets.hpp"
#include "hetfb/montecarlo/channel.hpp"
#include "hetfb/montecarlo/estimators.hpp"
#include "hetfb/montecarlo/network.hpp"
#include "hetfb/optimize/coop.hpp"
#include "hetfb/optimize/noncoop.hpp"

namespace {

using namespace hetfb;
using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) ok = false;
        notes.push_back((cond ? "" : "!") + what);
    }
    void info(const std::string& what) { notes.push_back("(" + what + ")"); }
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<double> kGammaDb{-10.0, -5.0, 0.0, 5.0, 10.0};

std::vector<double> gamma_grid() {
    std::vector<double> g;
    for (double x : kGammaDb) g.push_back(db_to_linear(x));
    return g;
}

Check band_check(const mc::SirStatistics& s, const std::function<double(double)>& analytic, const std::string& tag) {
    Check c;
    for (std::size_t i = 0; i < s.gamma.size(); ++i) {
        const double a = analytic(s.gamma[i]);
        const auto& e = s.ccdf[i];
        c.expect(e.covers_proportion(a), fmt((tag + " %gdB: %.4f vs %.4f").c_str(), kGammaDb[i], a, e.mean));
    }
    return c;
}

void merge(Check& into, const Check& c) {
    into.ok = into.ok && c.ok;
    for (const auto& n : c.notes)
        if (n[0] == '!') into.notes.push_back(n);
}

Check criterion1() {
    const auto t0 = Clock::now();
    const auto doc = presets::fig1('a');
    const auto cfg = doc.network();
    const auto bits = partition_noncoop(cfg, doc.feedback()->budget).allocation.bits;
    Check c;
    for (std::size_t k = 0; k < cfg.tier_count(); ++k) {
        const auto s = mc::estimate_noncoop(cfg, k, bits[k], gamma_grid(), {100000, 1 + k});
        merge(c, band_check(s, [&](double g) { return sir_ccdf_noncoop(g, cfg, k, bits[k]); }, "tier " + std::to_string(k + 1)));
    }
    const double t = seconds_since(t0);
    c.expect(t <= 300.0, fmt("3 tiers x 1e5 trials x 5 thresholds in %.1f s", t));
    return c;
}

Check criterion2() {
    const auto t0 = Clock::now();
    const auto doc = presets::fig2('a');
    const auto g = *doc.cluster();
    Check c;
    for (const auto& [name, bits] : {std::pair{"equal", equal_partition_coop(4, 10.0).bits},
                                     std::pair{"proposed", partition_coop(g.deltas, 4, 10.0).bits}}) {
        const CoopCondition cond{doc.network(), g, bits};
        const auto s = mc::estimate_coop_conditioned(cond, gamma_grid(), {100000, 2});
        merge(c, band_check(s, [&](double x) { return sir_ccdf_coop(x, cond); }, name));
    }
    const double t = seconds_since(t0);
    c.expect(t <= 300.0, fmt("2 splits x 1e5 trials in %.1f s", t));
    return c;
}

Check criterion3() {
    Check c;
    for (auto [v, target] : {std::pair{'a', 11.3}, std::pair{'b', 12.0}}) {
        const auto r = cli::compare_noncoop(presets::fig1(v), 10.0);
        c.expect(std::abs(r.gain - target) <= 1.5, fmt("fig1%c at 10 bits/BS: %.2f%% (target %.1f)", v, r.gain, target));
    }
    return c;
}

Check criterion4() {
    Check c;
    for (auto [v, target] : {std::pair{'a', 38.2}, std::pair{'b', 56.2}}) {
        const auto r = cli::compare_coop(presets::fig2(v), 10.0);
        c.expect(std::abs(r.gain_printed - target) <= 1.0,
                 fmt("fig2%c: %.2f%% (target %.1f)", v, r.gain_printed, target));
        c.info(fmt("budget-feasible split: %.2f%%", r.gain_feasible));
    }
    return c;
}

Check criterion5() {
    Check c;
    for (auto [v, p2, p4] : {std::tuple{'a', 23.1, 13.2}, std::tuple{'b', 49.1, 17.1}}) {
        const auto r = cli::compare_coop(presets::fig4(v), 10.0);
        c.expect(std::abs(r.gain_printed - p2) <= 2.0, fmt("fig4%c closed form: %.2f%% (target %.1f)", v, r.gain_printed, p2));
        c.expect(std::abs(r.gain_expected - p4) <= 2.0, fmt("fig4%c expected split: %.2f%% (target %.1f)", v, r.gain_expected, p4));
        c.info(fmt("budget-feasible split: %.2f%%", r.gain_feasible));
    }
    return c;
}

Check criterion6() {
    Check c;
    for (auto [v, home, gain] : {std::tuple{'a', 10.0, 25.0}, std::tuple{'b', 16.0, 41.2}}) {
        const auto s = cli::search_general(presets::fig3(v), 16.0, default_gamma_grid(), 20000, 1);
        const auto& b = s.best.allocation.bits;
        c.expect(std::abs(s.best.home_bits - home) <= 1.0, fmt("fig3%c home bits %.0f (target %.0f)", v, s.best.home_bits, home));
        c.expect(std::abs(s.gain_printed - gain) <= 5.0, fmt("fig3%c gain %.2f%% (target %.1f)", v, s.gain_printed, gain));
        c.info(fmt("split {%.3g,%.3g,%.3g}", b[0], b[1], b[2]) + fmt(" at %.1f dB", linear_to_db(s.best.gamma)) +
               fmt(", feasible-baseline gain %.2f%%", s.gain_feasible));
    }
    return c;
}

Check criterion7() {
    Check c;
    int worst_L = 0;
    double worst = 0.0;
    for (int L : {2, 4})
        for (double b : {0.0, 6.0, 12.0}) {
            mc::Rng rng = mc::block_rng(7, static_cast<std::uint64_t>(L * 100 + b));
            const std::vector<double> s{0.5, 2.0};
            std::vector<mc::Tally> t(s.size());
            for (int i = 0; i < 100000; ++i) {
                const double g = mc::sample_residual_gain(L, L, b, mc::CoopMode::reduced, rng);
                for (std::size_t j = 0; j < s.size(); ++j) t[j].add(std::exp(-s[j] * g));
            }
            for (std::size_t j = 0; j < s.size(); ++j) {
                const auto e = t[j].estimate(7);
                const double exact = 1.0 / (1.0 + s[j] * std::exp2(-b / (L - 1)));
                const double sigma = e.half_width_95 / 1.96;
                const double z = sigma > 0.0 ? std::abs(e.mean - exact) / sigma : (e.mean == exact ? 0.0 : INFINITY);
                if (z > worst) worst = z, worst_L = L;
                if (z > 3.0) c.expect(false, fmt("zf L=%d B=%g s=%g", L, b, s[j]) + fmt(" off by %.2f sigma", z));
            }
        }
    c.expect(worst <= 3.0, fmt("zf residual: worst deviation %.2f sigma", worst) + fmt(" (L=%d)", worst_L));

    worst = 0.0;
    for (int n : {2, 4, 8})
        for (double b : {0.0, 4.0, 10.0}) {
            mc::Rng rng = mc::block_rng(8, static_cast<std::uint64_t>(n * 100 + b));
            const std::vector<double> s{0.5, 2.0};
            std::vector<mc::Tally> t(s.size());
            for (int i = 0; i < 100000; ++i) {
                const mc::ComplexVector h = mc::complex_gaussian(n, rng);
                const double g = mc::gain(h, mc::quantize_direction(h, b, rng).direction);
                for (std::size_t j = 0; j < s.size(); ++j) t[j].add(std::exp(-s[j] * g));
            }
            for (std::size_t j = 0; j < s.size(); ++j) {
                const auto e = t[j].estimate(8);
                const double z = std::abs(e.mean - desired_power_laplace(s[j], n, b)) / (e.half_width_95 / 1.96);
                worst = std::max(worst, z);
                if (z > 3.0) c.expect(false, fmt("mrt N=%d B=%g s=%g", n, b, s[j]) + fmt(" off by %.2f sigma", z));
            }
        }
    c.expect(worst <= 3.0, fmt("mrt desired power: worst deviation %.2f sigma", worst));
    return c;
}

Check criterion8() {
    Check c;
    const std::size_t n = 100000;
    for (auto [cfg, L, name] : {std::tuple{presets::fig4('a').network(), 2, "K=1 L=2"},
                                std::tuple{presets::fig2('a').network(), 4, "K=3 L=4"},
                                std::tuple{presets::fig1('a').network(), 1, "K=3 L=1"}}) {
        const double radius = mc::coverage_radius(cfg, L);
        std::vector<std::vector<double>> by_tier(cfg.tier_count());
        std::vector<double> pooled;
        mc::Rng rng = mc::block_rng(8, static_cast<std::uint64_t>(L));
        for (std::size_t i = 0; i < n; ++i) {
            const auto cl = mc::associate_and_cluster(mc::sample_network(cfg, radius, rng), cfg, L);
            by_tier[cl.members.back().tier].push_back(cl.members.back().distance);
        }
        for (std::size_t k = 0; k < cfg.tier_count(); ++k) {
            if (by_tier[k].size() < 1000) continue;
            const auto cdf = [&](double r) { return lth_distance_cdf(r, cfg, k, L); };
            const double p = mc::ks_p_value(mc::ks_statistic(by_tier[k], cdf), by_tier[k].size());
            c.expect(p > 0.01, fmt("%s tier %.0f: p=%.3f", name, k + 1.0, p) + fmt(" (n=%zu)", by_tier[k].size()));
        }
    }
    // L = 1 is the serving-distance law
    const auto cfg = presets::fig1('a').network();
    double rel = 0.0;
    for (std::size_t k = 0; k < cfg.tier_count(); ++k)
        for (double r = 1.0; r < 400.0; r *= 1.3) {
            const double a = association_pdf(r, cfg, k);
            if (a > 1e-300) rel = std::max(rel, std::abs(lth_distance_pdf(r, cfg, k, 1) / a - 1.0));
        }
    c.expect(rel < 1e-12, fmt("L=1 pdf equals serving-distance pdf (max rel diff %.1e)", rel));
    return c;
}

Check criterion9() {
    Check c;
    const std::vector<double> deltas{0.3, 0.05, 0.004, 0.001};
    double sum_err = 0.0, scale_err = 0.0, uniform_err = 0.0;
    for (double b : {0.0, 3.0, 10.0, 40.0, 200.0}) {
        const auto a = partition_coop(deltas, 5, b);
        double s = 0.0;
        for (double x : a.bits) s += x;
        sum_err = std::max(sum_err, std::abs(s - b));
        std::vector<double> scaled;
        for (double d : deltas) scaled.push_back(d * 0.037);
        const auto a2 = partition_coop(scaled, 5, b);
        for (std::size_t i = 0; i < deltas.size(); ++i) scale_err = std::max(scale_err, std::abs(a.bits[i] - a2.bits[i]));
        const auto u = partition_coop(std::vector<double>(4, 0.02), 5, b);
        for (double x : u.bits) uniform_err = std::max(uniform_err, std::abs(x - b / 4.0));
    }
    c.expect(sum_err < 1e-9, fmt("partition_coop sums to budget (err %.1e)", sum_err));
    c.expect(scale_err < 1e-9, fmt("partition_coop delta-scale invariant (err %.1e)", scale_err));
    c.expect(uniform_err < 1e-9, fmt("partition_coop equal under uniform deltas (err %.1e)", uniform_err));

    double kkt = 0.0;
    for (char v : {'a', 'b'}) {
        const auto cfg = presets::fig1(v).network();
        double lam = 0.0;
        for (const auto& t : cfg.tiers) lam += t.density;
        for (double per_bs : {2.0, 10.0, 30.0}) {
            const auto r = partition_noncoop(cfg, per_bs * lam);
            for (std::size_t k : r.active_set)
                kkt = std::max(kkt, std::abs(noncoop_marginal(cfg, k, r.allocation.bits[k]) * r.multiplier - 1.0));
        }
    }
    c.expect(kkt < 1e-6, fmt("partition_noncoop marginals equal on active set (rel err %.1e)", kkt));

    const auto e = partition_single_tier_expected(3, 4.0, 10.0);
    c.expect(std::abs(e[0] - 6.442) < 1e-3 && std::abs(e[1] - 3.558) < 1e-3,
             fmt("expected split (L=3, beta=4, B=10) = {%.4f, %.4f}", e[0], e[1]));
    return c;
}

Check criterion10() {
    Check c;
    for (double beta : {3.0, 4.0, 6.0})
        for (double b : {50.0, 100.0, 500.0}) {
            const auto e = effective_cluster_size(b, beta);
            c.expect(e.exact >= e.lower_bound, fmt("beta=%g B=%g: L_eff=%d", beta, b, e.exact) +
                                                   fmt(" >= %.3f", e.lower_bound));
        }
    const double ratio4 = double(effective_cluster_size(2000.0, 4.0).exact) / effective_cluster_size(500.0, 4.0).exact;
    c.expect(ratio4 >= 1.8 && ratio4 <= 2.2, fmt("beta=4: L_eff(2000)/L_eff(500) = %.3f", ratio4));
    for (double beta : {3.0, 6.0}) {
        const double r = double(effective_cluster_size(2000.0, beta).exact) / effective_cluster_size(500.0, beta).exact;
        c.info(fmt("beta=%g ratio %.3f", beta, r));
    }
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"1 noncoop CCDF vs simulation (fig1a)", criterion1},
        {"2 coop CCDF vs simulation (fig2a)", criterion2},
        {"3 noncoop area SE gain (fig1)", criterion3},
        {"4 coop SE gain at B=10 (fig2)", criterion4},
        {"5 single-tier gains at B=10 (fig4)", criterion5},
        {"6 general-antenna line search (fig3)", criterion6},
        {"7 fading Laplace oracles", criterion7},
        {"8 distance law KS", criterion8},
        {"9 optimizer properties", criterion9},
        {"10 effective cluster size", criterion10},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = Clock::now();
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::printf("[%s] criterion %s (%.1f s)\n", c.ok ? "PASS" : "FAIL", name.c_str(), seconds_since(t0));
        for (const auto& n : c.notes) std::printf("       %s\n", n.c_str());
        std::fflush(stdout);
        failed += c.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
