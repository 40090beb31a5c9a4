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

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "hetfb/special/functions.hpp"
#include "hetfb/special/hypergeometric.hpp"
#include "hetfb/special/jet.hpp"
#include "hetfb/special/quadrature.hpp"

namespace {

using hetfb::Jet;

double closed_form_d4(double x) { return std::sqrt(x) * std::atan(std::sqrt(x)); }

// Euler's integral, c > b > 0, by tanh-sinh quadrature in long double.
double euler_2f1(double a, double b, double c, double x) {
    boost::math::quadrature::tanh_sinh<long double> ts;
    const long double la = a, lb = b, lc = c, lx = x;
    auto f = [&](long double t) {
        return std::pow(t, lb - 1) * std::pow(1 - t, lc - lb - 1) * std::pow(1 - lx * t, -la);
    };
    const long double integral = ts.integrate(f, 0.0L, 1.0L);
    return static_cast<double>(integral * std::tgamma(lc) / (std::tgamma(lb) * std::tgamma(lc - lb)));
}

TEST(Gauss2F1, ZeroArgument) { EXPECT_EQ(hetfb::gauss_2f1(1, 0.5, 1.5, 0.0), 1.0); }

TEST(Gauss2F1, ArctanIdentity) {
    EXPECT_NEAR(hetfb::gauss_2f1(1, 0.5, 1.5, -1.0), std::numbers::pi / 4, 1e-14);
    EXPECT_NEAR(hetfb::gauss_2f1(1, 0.5, 1.5, -4.0), std::atan(2.0) / 2, 1e-14);
    for (double z : {0.1, 0.5, 0.9, 1.3, 3.0, 10.0, 300.0, 1e5}) {
        const double expect = std::atan(z) / z;
        EXPECT_NEAR(hetfb::gauss_2f1(1, 0.5, 1.5, -z * z), expect, 1e-12 * expect) << z;
    }
}

TEST(Gauss2F1, MatchesEulerIntegralAcrossBranches) {
    const std::vector<double> xs = {-0.01, -0.3, -0.49, -0.5, -0.9, -1.7, -2.0, -2.01, -7.5, -40.0, -1e3, -1e6};
    for (double beta : {2.5, 3.0, 3.7, 4.0, 6.0}) {
        const double b = 1.0 - 2.0 / beta;
        for (double x : xs) {
            for (int j : {0, 1, 3, 7}) {
                const double a = 1.0 + j;
                const double bb = b + j;
                const double c = 1.0 + b + j;
                const double got = hetfb::gauss_2f1(a, bb, c, x);
                const double want = euler_2f1(a, bb, c, x);
                EXPECT_NEAR(got, want, 1e-10 * std::abs(want)) << beta << " " << x << " " << j;
            }
        }
    }
}

TEST(Gauss2F1, IntegerGapUsesPfaff) {
    // a - b integer makes the 1/x connection formula singular
    for (double x : {-0.7, -3.0, -50.0}) {
        const double want = euler_2f1(1.0, 2.0, 3.0, x);
        EXPECT_NEAR(hetfb::gauss_2f1(1.0, 2.0, 3.0, x), want, 1e-10 * std::abs(want));
    }
}

TEST(Gauss2F1, Errors) {
    EXPECT_THROW(hetfb::gauss_2f1(1, 1, 0.0, -1.0), hetfb::domain_error);
    EXPECT_THROW(hetfb::gauss_2f1(1, 1, -3.0, -1.0), hetfb::domain_error);
    EXPECT_THROW(hetfb::gauss_2f1(1, 1, 2.0, 0.7), hetfb::domain_error);
    EXPECT_THROW(hetfb::gauss_2f1(1, 1, 2.0, std::nan("")), hetfb::domain_error);
}

TEST(DFunc, ClosedFormAtBetaFour) {
    EXPECT_EQ(hetfb::d_func(0.0, 4.0), 0.0);
    EXPECT_NEAR(hetfb::d_func(1.0, 4.0), std::numbers::pi / 4, 1e-13);
    EXPECT_NEAR(hetfb::d_func(4.0, 4.0), 2.0 * std::atan(2.0), 1e-13);
    for (int i = 0; i <= 400; ++i) {
        const double x = 0.25 * i;
        const double d = hetfb::d_func(x, 4.0);
        EXPECT_LE(std::abs(d - closed_form_d4(x)), 1e-9 * (1.0 + std::abs(d))) << x;
    }
}

TEST(DFunc, MonotoneInBothArguments) {
    const std::vector<double> betas = {2.2, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0};
    for (double beta : betas) {
        double prev = -1.0;
        for (double x = 0.0; x <= 200.0; x += 0.37) {
            const double d = hetfb::d_func(x, beta);
            EXPECT_GE(d, prev) << beta << " " << x;
            prev = d;
        }
    }
    for (double x : {0.01, 0.5, 1.0, 10.0, 100.0}) {
        double prev = INFINITY;
        for (double beta : betas) {
            const double d = hetfb::d_func(x, beta);
            EXPECT_LE(d, prev) << beta << " " << x;
            prev = d;
        }
    }
}

TEST(DFunc, DomainErrors) {
    EXPECT_THROW(hetfb::d_func(1.0, 2.0), hetfb::domain_error);
    EXPECT_THROW(hetfb::d_func(1.0, 1.5), hetfb::domain_error);
    EXPECT_THROW(hetfb::d_func(-1.0, 4.0), hetfb::domain_error);
}

TEST(DFuncJet, FirstDerivativeAtOne) {
    const Jet j = hetfb::d_func_jet(Jet::variable(1.0, 1), 4.0);
    EXPECT_NEAR(j.value(), std::numbers::pi / 4, 1e-13);
    EXPECT_NEAR(j.derivative(1), std::atan(1.0) / 2 + 0.25, 1e-12);
    EXPECT_NEAR(j.derivative(1), 0.642699, 1e-6);
}

TEST(DFuncJet, OrderZeroIsScalar) {
    const Jet j = hetfb::d_func_jet(Jet::variable(0.0, 0), 4.0);
    EXPECT_EQ(j.order(), 0u);
    EXPECT_EQ(j.value(), 0.0);
    EXPECT_EQ(hetfb::d_func_jet(Jet::constant(2.5, 0), 3.0).value(), hetfb::d_func(2.5, 3.0));
}

// Richardson-extrapolated central differences of a scalar function.
double richardson_derivative(const auto& f, double x, int order, double h) {
    auto central = [&](double step) {
        double acc = 0.0;
        for (int i = 0; i <= order; ++i) {
            double binom = 1.0;
            for (int j = 0; j < i; ++j) binom = binom * (order - j) / (j + 1);
            acc += ((i % 2) ? -1.0 : 1.0) * binom * f(x + (0.5 * order - i) * step);
        }
        return acc / std::pow(step, order);
    };
    const double d1 = central(h);
    const double d2 = central(h / 2);
    return (4.0 * d2 - d1) / 3.0;
}

TEST(DFuncJet, MatchesFiniteDifferences) {
    for (double beta : {3.0, 4.0, 5.5}) {
        for (double x0 : {0.3, 1.0, 2.5, 12.0}) {
            const Jet j = hetfb::d_func_jet(Jet::variable(x0, 3), beta);
            auto f = [beta](double x) { return hetfb::d_func(x, beta); };
            for (int m = 1; m <= 3; ++m) {
                const double h = (m == 1 ? 1e-3 : m == 2 ? 1e-2 : 4e-2) * std::max(1.0, x0);
                const double fd = richardson_derivative(f, x0, m, h);
                EXPECT_NEAR(j.derivative(m), fd, 1e-6 * std::max(1.0, std::abs(fd))) << beta << " " << x0 << " " << m;
            }
        }
    }
}

TEST(DFuncJet, ComposedThroughScaledVariable) {
    // D(s / (1 - x)) with s a jet: chain rule through a linear map
    const double x = 0.3;
    const Jet s = Jet::variable(2.0, 4);
    const Jet j = hetfb::d_func_jet(s * (1.0 / (1.0 - x)), 4.0);
    auto f = [x](double v) { return closed_form_d4(v / (1.0 - x)); };
    EXPECT_NEAR(j.derivative(1), richardson_derivative(f, 2.0, 1, 1e-3), 1e-8);
    EXPECT_NEAR(j.derivative(2), richardson_derivative(f, 2.0, 2, 1e-2), 1e-6);
}

TEST(JetArithmetic, OrderZeroIsScalar) {
    const Jet a = Jet::constant(1.5, 0);
    const Jet b = Jet::constant(-0.25, 0);
    EXPECT_EQ((a + b).value(), 1.5 + -0.25);
    EXPECT_EQ((a * b).value(), 1.5 * -0.25);
    EXPECT_EQ((a / b).value(), 1.5 / -0.25);
    EXPECT_EQ(reciprocal(a).value(), 1.0 / 1.5);
    EXPECT_EQ(hetfb::exp(a).value(), std::exp(1.5));
}

TEST(JetArithmetic, OrdersArePreservedAndChecked) {
    const Jet a = Jet::variable(0.7, 5);
    const Jet b = Jet::variable(1.2, 5);
    EXPECT_EQ((a * b).order(), 5u);
    EXPECT_EQ(reciprocal(a).order(), 5u);
    EXPECT_EQ(hetfb::pow(b, 0.4).order(), 5u);
    EXPECT_EQ(a.coeffs().size(), 6u);
    EXPECT_THROW(a + Jet::variable(1.0, 3), std::invalid_argument);
}

TEST(JetArithmetic, SmoothCompositionsMatchFiniteDifferences) {
    // f(t) = exp(t) / (1 + t^2) * sqrt(2 + t) - log(3 + t)^1.5
    auto scalar = [](double t) {
        return std::exp(t) / (1.0 + t * t) * std::sqrt(2.0 + t) - std::pow(std::log(3.0 + t), 1.5);
    };
    for (double t0 : {-0.5, 0.0, 0.8, 2.0}) {
        const Jet t = Jet::variable(t0, 4);
        const Jet f = hetfb::exp(t) / (1.0 + t * t) * hetfb::sqrt(2.0 + t) - hetfb::pow(hetfb::log(3.0 + t), 1.5);
        EXPECT_NEAR(f.value(), scalar(t0), 1e-14);
        for (int m = 1; m <= 4; ++m) {
            const double fd = richardson_derivative(scalar, t0, m, m == 1 ? 1e-3 : 2e-2);
            EXPECT_NEAR(f.derivative(m), fd, 1e-6 * std::max(1.0, std::abs(fd))) << t0 << " " << m;
        }
    }
}

TEST(Digamma, Values) {
    EXPECT_NEAR(hetfb::digamma(1.0), -hetfb::euler_gamma, 1e-14);
    EXPECT_NEAR(hetfb::digamma(1.0), -0.5772156649, 1e-10);
    EXPECT_NEAR(hetfb::digamma(2.0), 1.0 - hetfb::euler_gamma, 1e-14);
    EXPECT_NEAR(hetfb::digamma(8.0), 363.0 / 140.0 - hetfb::euler_gamma, 1e-13);
    EXPECT_NEAR(hetfb::digamma(8.0), 2.0156414780, 1e-10);
    EXPECT_NEAR(hetfb::digamma(0.5), -hetfb::euler_gamma - 2.0 * std::numbers::ln2, 1e-13);
}

TEST(Digamma, Recurrence) {
    for (double x : {0.5, 1.0, 3.25, 10.0}) {
        EXPECT_NEAR(hetfb::digamma(x + 1.0) - hetfb::digamma(x), 1.0 / x, 1e-12) << x;
    }
}

TEST(Digamma, DomainError) {
    EXPECT_THROW(hetfb::digamma(0.0), hetfb::domain_error);
    EXPECT_THROW(hetfb::digamma(-2.5), hetfb::domain_error);
}

TEST(Harmonic, Values) {
    EXPECT_EQ(hetfb::harmonic(1), 1.0);
    EXPECT_NEAR(hetfb::harmonic(3), 11.0 / 6.0, 1e-15);
    EXPECT_NEAR(hetfb::harmonic(7), 363.0 / 140.0, 1e-15);
    EXPECT_EQ(hetfb::harmonic(0), 0.0);
}

TEST(Quadrature, SemiInfiniteBasics) {
    auto e = hetfb::integrate_semi_infinite<double>([](double z) { return std::exp(-z); });
    EXPECT_NEAR(e.value, 1.0, 1e-8);
    EXPECT_LE(e.error, 1e-8);
    auto r = hetfb::integrate_semi_infinite<double>([](double z) { return 1.0 / ((1.0 + z) * (1.0 + z)); });
    EXPECT_NEAR(r.value, 1.0, 1e-8);
}

TEST(Quadrature, MatchesTrapezoidOracle) {
    auto f = [](double z) { return 1.0 / ((1.0 + z) * (1.0 + hetfb::d_func(z, 4.0))); };
    hetfb::QuadratureOptions opt;
    opt.tail_power = 2.0;
    const double got = hetfb::integrate_semi_infinite<double>(f, opt).value;
    // brute force: 1e6-point trapezoid in t with z = t^2/(1-t)^2 (smooth at both
    // ends for this decay rate), closed-form D(., 4)
    const std::size_t n = 1'000'000;
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double t = static_cast<double>(i) / n;
        const double r = t / (1.0 - t);
        const double z = r * r;
        const double jac = 2.0 * t / ((1.0 - t) * (1.0 - t) * (1.0 - t));
        acc += jac / ((1.0 + z) * (1.0 + closed_form_d4(z)));
    }
    const double trapezoid = (acc + 0.5 * 4.0 / std::numbers::pi) / n;  // integrand -> 4/pi at t = 1
    EXPECT_NEAR(got, trapezoid, 1e-6);
}

TEST(Quadrature, JetIntegrandCarriesDerivatives) {
    // int_0^1 exp(s x) dx at s = 1, derivatives by s
    const Jet s = Jet::variable(1.0, 3);
    auto f = [&s](double x) { return hetfb::exp(s * x); };
    auto res = hetfb::integrate_interval<Jet>(f, 0.0, 1.0);
    EXPECT_NEAR(res.value.value(), std::numbers::e - 1.0, 1e-12);
    EXPECT_NEAR(res.value.derivative(1), 1.0, 1e-12);                     // int x e^x
    EXPECT_NEAR(res.value.derivative(2), std::numbers::e - 2.0, 1e-12);   // int x^2 e^x
}

TEST(Quadrature, NonConvergenceCarriesEstimate) {
    hetfb::QuadratureOptions opt;
    opt.abs_tol = 1e-14;
    opt.max_subdivisions = 3;
    try {
        hetfb::integrate_interval<double>([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt);
        FAIL() << "expected convergence_error";
    } catch (const hetfb::convergence_error& e) {
        EXPECT_GT(e.partial_estimate(), 1.0);
        EXPECT_LT(e.partial_estimate(), 2.0);
        EXPECT_GT(e.error_estimate(), 0.0);
    }
}

}  // namespace
