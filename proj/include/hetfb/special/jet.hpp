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
#include <span>
#include <stdexcept>
#include <vector>

namespace hetfb {

/// Truncated power series in one variable t around an expansion point.
///
/// Coefficient j holds f^(j)(t0) / j! (normalized Taylor coefficient), so a
/// product of two jets is a plain Cauchy product. Use derivative(j) for the
/// raw j-th derivative. All binary operations require equal orders; mixing
/// orders is a programming error and throws std::invalid_argument.
class Jet {
public:
    Jet() : c_(1, 0.0) {}

    explicit Jet(std::size_t order, double value = 0.0) : c_(order + 1, 0.0) { c_[0] = value; }

    /// The independent variable t evaluated at `value`: value + 1*t.
    static Jet variable(double value, std::size_t order) {
        Jet j(order, value);
        if (order > 0) j.c_[1] = 1.0;
        return j;
    }

    static Jet constant(double value, std::size_t order) { return Jet(order, value); }

    static Jet from_coefficients(std::vector<double> coeffs) {
        if (coeffs.empty()) throw std::invalid_argument("Jet needs at least one coefficient");
        Jet j;
        j.c_ = std::move(coeffs);
        return j;
    }

    std::size_t order() const noexcept { return c_.size() - 1; }
    double value() const noexcept { return c_[0]; }

    double operator[](std::size_t j) const { return c_[j]; }
    double& operator[](std::size_t j) { return c_[j]; }

    std::span<const double> coeffs() const noexcept { return c_; }

    /// j-th derivative with respect to the jet variable.
    double derivative(std::size_t j) const {
        double f = 1.0;
        for (std::size_t i = 2; i <= j; ++i) f *= static_cast<double>(i);
        return c_.at(j) * f;
    }

    Jet& operator+=(const Jet& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Jet& operator*=(const Jet& o) {
        *this = *this * o;
        return *this;
    }
    Jet& operator/=(const Jet& o) {
        *this = *this / o;
        return *this;
    }
    Jet& operator+=(double s) {
        c_[0] += s;
        return *this;
    }
    Jet& operator-=(double s) {
        c_[0] -= s;
        return *this;
    }
    Jet& operator*=(double s) {
        for (double& v : c_) v *= s;
        return *this;
    }
    Jet& operator/=(double s) {
        for (double& v : c_) v /= s;
        return *this;
    }

    friend Jet operator-(Jet a) {
        for (double& v : a.c_) v = -v;
        return a;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, Jet a) { return (-a) += s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a /= s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        a.check(b);
        const std::size_t n = a.c_.size();
        Jet r(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k <= i; ++k) acc += a.c_[k] * b.c_[i - k];
            r.c_[i] = acc;
        }
        return r;
    }

    friend Jet reciprocal(const Jet& a) {
        if (a.c_[0] == 0.0) throw std::domain_error("Jet reciprocal of zero value");
        const std::size_t n = a.c_.size();
        Jet r(n - 1);
        const double inv = 1.0 / a.c_[0];
        r.c_[0] = inv;
        for (std::size_t i = 1; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t k = 1; k <= i; ++k) acc += a.c_[k] * r.c_[i - k];
            r.c_[i] = -acc * inv;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
    friend Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

    friend bool operator==(const Jet&, const Jet&) = default;

private:
    void check(const Jet& o) const {
        if (o.c_.size() != c_.size()) throw std::invalid_argument("Jet order mismatch");
    }

    std::vector<double> c_;
};

/// f(a) given the normalized Taylor coefficients of f at a.value():
/// taylor[j] = f^(j)(a0) / j!. Needs taylor.size() >= a.order() + 1.
inline Jet compose(const Jet& a, std::span<const double> taylor) {
    const std::size_t m = a.order();
    if (taylor.size() < m + 1) throw std::invalid_argument("compose: not enough Taylor coefficients");
    Jet h = a;
    h[0] = 0.0;
    Jet r(m, taylor[m]);
    for (std::size_t j = m; j-- > 0;) {
        r = r * h;
        r[0] += taylor[j];
    }
    return r;
}

/// a^p for a.value() > 0.
inline Jet pow(const Jet& a, double p) {
    const double a0 = a[0];
    if (!(a0 > 0.0)) throw std::domain_error("Jet pow needs a positive value");
    const std::size_t n = a.order() + 1;
    Jet r(n - 1, std::pow(a0, p));
    for (std::size_t i = 1; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= i; ++k)
            acc += (p * static_cast<double>(k) - static_cast<double>(i - k)) * a[k] * r[i - k];
        r[i] = acc / (static_cast<double>(i) * a0);
    }
    return r;
}

inline Jet exp(const Jet& a) {
    const std::size_t n = a.order() + 1;
    Jet r(n - 1, std::exp(a[0]));
    for (std::size_t i = 1; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= i; ++k) acc += static_cast<double>(k) * a[k] * r[i - k];
        r[i] = acc / static_cast<double>(i);
    }
    return r;
}

inline Jet log(const Jet& a) {
    const double a0 = a[0];
    if (!(a0 > 0.0)) throw std::domain_error("Jet log needs a positive value");
    const std::size_t n = a.order() + 1;
    Jet r(n - 1, std::log(a0));
    for (std::size_t i = 1; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 1; k < i; ++k) acc += static_cast<double>(k) * r[k] * a[i - k];
        r[i] = (a[i] - acc / static_cast<double>(i)) / a0;
    }
    return r;
}

inline Jet sqrt(const Jet& a) { return pow(a, 0.5); }

/// Largest coefficient magnitude; the norm quadrature uses for error control.
inline double magnitude(const Jet& a) {
    double m = 0.0;
    for (double v : a.coeffs()) m = std::max(m, std::abs(v));
    return m;
}

inline double magnitude(double a) { return std::abs(a); }

/// Scalar value of either a plain double or a Jet.
inline double value_of(double a) { return a; }
inline double value_of(const Jet& a) { return a.value(); }

}  // namespace hetfb
