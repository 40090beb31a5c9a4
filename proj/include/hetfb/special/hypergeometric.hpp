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
#include <limits>
#include <vector>

#include "hetfb/error.hpp"
#include "hetfb/special/jet.hpp"

namespace hetfb {

namespace detail {

inline bool is_nonpositive_integer(double v) { return v <= 0.0 && std::floor(v) == v; }

/// 1/Gamma(v); zero at the poles.
inline double reciprocal_gamma(double v) {
    if (is_nonpositive_integer(v)) return 0.0;
    if (v > 0.0 && v < 170.0) return 1.0 / std::tgamma(v);
    const double sign = (v > 0.0 || static_cast<long long>(std::floor(v)) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(-std::lgamma(v));
}

inline double log_abs_gamma(double v) { return std::lgamma(v); }

inline double gamma_sign(double v) {
    if (v > 0.0) return 1.0;
    return static_cast<long long>(std::floor(v)) % 2 == 0 ? 1.0 : -1.0;
}

/// Plain hypergeometric series; caller guarantees |x| is comfortably below 1.
inline double hyp2f1_series(double a, double b, double c, double x, std::size_t max_terms) {
    double term = 1.0;
    double sum = 1.0;
    int small_run = 0;
    for (std::size_t n = 0; n < max_terms; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++small_run >= 2) return sum;
        } else {
            small_run = 0;
        }
    }
    throw convergence_error("gauss_2f1: series did not converge", sum, std::abs(term));
}

/// Large negative argument: DLMF 15.8.2, valid when a - b is not an integer.
inline double hyp2f1_inverse(double a, double b, double c, double x) {
    const double w = 1.0 / x;  // in (-0.5, 0)
    const double mx = -x;
    double result = 0.0;
    if (const double rg = reciprocal_gamma(b) * reciprocal_gamma(c - a); rg != 0.0) {
        const double lg = log_abs_gamma(c) + log_abs_gamma(b - a) - a * std::log(mx);
        const double sg = gamma_sign(c) * gamma_sign(b - a);
        const double mag = std::exp(lg + std::log(std::abs(rg)));
        result += sg * (rg > 0 ? 1.0 : -1.0) * mag * hyp2f1_series(a, a - c + 1.0, a - b + 1.0, w, 20000);
    }
    if (const double rg = reciprocal_gamma(a) * reciprocal_gamma(c - b); rg != 0.0) {
        const double lg = log_abs_gamma(c) + log_abs_gamma(a - b) - b * std::log(mx);
        const double sg = gamma_sign(c) * gamma_sign(a - b);
        const double mag = std::exp(lg + std::log(std::abs(rg)));
        result += sg * (rg > 0 ? 1.0 : -1.0) * mag * hyp2f1_series(b, b - c + 1.0, b - a + 1.0, w, 20000);
    }
    return result;
}

}  // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; x) for real x < 0.5; the
/// analytic expressions only need x <= 0.
///
/// |x| < 0.5 uses the defining series, -2 <= x <= -0.5 the Pfaff
/// transformation (argument x/(x-1) in [1/3, 2/3]) and x < -2 the 1/x
/// connection formula. When a - b is an integer the 1/x formula is singular
/// and the Pfaff branch is used for all x <= -0.5 with a larger term budget.
inline double gauss_2f1(double a, double b, double c, double x) {
    if (detail::is_nonpositive_integer(c)) throw domain_error("gauss_2f1: c is a nonpositive integer");
    if (std::isnan(x) || x >= 0.5) throw domain_error("gauss_2f1: x must be below 0.5");
    if (x == 0.0) return 1.0;
    if (std::abs(x) < 0.5) return detail::hyp2f1_series(a, b, c, x, 5000);
    const double amb = a - b;
    const bool integral_gap = std::floor(amb) == amb;
    if (x >= -2.0 || integral_gap) {
        if (!std::isfinite(x)) throw domain_error("gauss_2f1: x must be finite");
        const double z = x / (x - 1.0);
        return std::pow(1.0 - x, -a) * detail::hyp2f1_series(a, c - b, c, z, 2'000'000);
    }
    if (std::isinf(x)) {
        // both branches decay like (-x)^{-min(a,b)}; limit is 0 for a, b > 0
        if (a > 0.0 && b > 0.0) return 0.0;
        throw domain_error("gauss_2f1: infinite argument");
    }
    return detail::hyp2f1_inverse(a, b, c, x);
}

/// D(x, y) = 2x/(y-2) * 2F1(1, 1-2/y; 2-2/y; -x): the interference functional
/// of a PPP outside an exclusion ball, per unit of excluded area.
inline double d_func(double x, double y) {
    if (!(y > 2.0)) throw domain_error("d_func: y must exceed 2");
    if (!(x >= 0.0)) throw domain_error("d_func: x must be nonnegative");
    if (x == 0.0) return 0.0;
    const double b = 1.0 - 2.0 / y;
    return 2.0 * x / (y - 2.0) * gauss_2f1(1.0, b, 1.0 + b, -x);
}

/// D(x, y) propagated through a jet in x. The Taylor coefficients of
/// u -> 2F1(a, b; c; -u) follow from d/dx 2F1(a,b;c;x) = (ab/c) 2F1(a+1,b+1;c+1;x).
inline Jet d_func_jet(const Jet& x, double y) {
    if (!(y > 2.0)) throw domain_error("d_func: y must exceed 2");
    const double x0 = x.value();
    if (!(x0 >= 0.0)) throw domain_error("d_func: x must be nonnegative");
    const std::size_t m = x.order();
    const double a = 1.0;
    const double b = 1.0 - 2.0 / y;
    const double c = 1.0 + b;

    std::vector<double> taylor(m + 1);
    double pochhammer_ratio = 1.0;  // (a)_j (b)_j / ((c)_j j!) with sign (-1)^j
    for (std::size_t j = 0; j <= m; ++j) {
        const double dj = static_cast<double>(j);
        if (j > 0) pochhammer_ratio *= -(a + dj - 1.0) * (b + dj - 1.0) / ((c + dj - 1.0) * dj);
        taylor[j] = pochhammer_ratio * gauss_2f1(a + dj, b + dj, c + dj, -x0);
    }
    return (2.0 / (y - 2.0)) * x * compose(x, taylor);
}

}  // namespace hetfb
