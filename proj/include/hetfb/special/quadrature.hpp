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
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "hetfb/error.hpp"
#include "hetfb/special/jet.hpp"

namespace hetfb {

struct QuadratureOptions {
    double abs_tol = 1e-8;
    double rel_tol = 0.0;
    std::size_t max_subdivisions = 4000;
    // Semi-infinite ranges: [1, inf) is mapped by z = u^{-tail_power}. An
    // integrand decaying like z^{-1-a} becomes smooth at u = 0 for tail_power = 1/a.
    double tail_power = 1.0;
};

template <class T>
struct QuadratureResult {
    T value;
    double error;
    std::size_t evaluations;
};

namespace detail {

// Gauss–Kronrod 7/15 nodes on [-1, 1]; symmetric half, centre last.
inline constexpr std::array<double, 7> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5) and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk15(F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(centre);
    T kronrod = fc * kKronrodWeights[7];
    T gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const T f1 = f(centre - dx);
        const T f2 = f(centre + dx);
        const T pair = f1 + f2;
        kronrod += pair * kKronrodWeights[j];
        if (j % 2 == 1) gauss += pair * kGaussWeights[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    const double err = magnitude(kronrod - gauss);
    return {a, b, std::move(kronrod), err};
}

}  // namespace detail

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of f over [a, b]. T is
/// double or Jet; error control uses magnitude(), i.e. the largest jet
/// coefficient. Throws convergence_error with the partial estimate when the
/// subdivision budget runs out.
template <class T, class F>
QuadratureResult<T> integrate_interval(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    std::priority_queue<detail::Segment<T>> heap;
    auto first = detail::gk15<T>(f, a, b);
    T total = first.value;
    double total_err = first.error;
    heap.push(std::move(first));
    std::size_t evals = 15;
    std::size_t splits = 0;
    const auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * magnitude(total)); };
    while (total_err > target()) {
        if (splits >= opt.max_subdivisions) {
            throw convergence_error("quadrature: subdivision limit reached", value_of(total), total_err);
        }
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw convergence_error("quadrature: interval underflow", value_of(total), total_err);
        }
        auto left = detail::gk15<T>(f, worst.a, mid);
        auto right = detail::gk15<T>(f, mid, worst.b);
        evals += 30;
        ++splits;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(std::move(left));
        heap.push(std::move(right));
        // refresh sums periodically to keep cancellation error out of the running totals
        if (splits % 64 == 0) {
            std::vector<detail::Segment<T>> all;
            all.reserve(heap.size());
            while (!heap.empty()) {
                all.push_back(heap.top());
                heap.pop();
            }
            total = all.front().value;
            total_err = all.front().error;
            for (std::size_t i = 1; i < all.size(); ++i) {
                total += all[i].value;
                total_err += all[i].error;
            }
            for (auto& s : all) heap.push(std::move(s));
        }
    }
    return {std::move(total), total_err, evals};
}

/// Integral of f over (0, inf): [0, 1] directly, [1, inf) via z = u^{-p}.
template <class T, class F>
QuadratureResult<T> integrate_semi_infinite(F&& f, const QuadratureOptions& opt = {}) {
    QuadratureOptions half = opt;
    half.abs_tol = 0.5 * opt.abs_tol;
    auto head = integrate_interval<T>(f, 0.0, 1.0, half);
    const double p = opt.tail_power;
    auto g = [&f, p](double u) {
        const double z = std::pow(u, -p);
        return f(z) * (p * z / u);
    };
    auto tail = integrate_interval<T>(g, 0.0, 1.0, half);
    return {head.value + tail.value, head.error + tail.error, head.evaluations + tail.evaluations};
}

}  // namespace hetfb
