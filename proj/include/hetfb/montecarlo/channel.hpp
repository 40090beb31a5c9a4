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
#include <complex>
#include <numbers>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hetfb/error.hpp"
#include "hetfb/montecarlo/rng.hpp"

namespace hetfb::mc {

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Entries i.i.d. CN(0, 1).
inline ComplexVector complex_gaussian(Eigen::Index n, Rng& rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = {g(rng), g(rng)};
    return v;
}

inline ComplexVector isotropic_unit(Eigen::Index n, Rng& rng) {
    ComplexVector v = complex_gaussian(n, rng);
    return v / v.norm();
}

/// sin^2 of the quantization angle: CDF 2^B x^{N-1} on [0, 2^{-B/(N-1)}].
inline double sample_quantization_error(double bits, int antennas, Rng& rng) {
    if (antennas < 2) throw domain_error("sample_quantization_error: needs at least 2 antennas");
    if (!(bits >= 0.0)) throw domain_error("sample_quantization_error: bits must be nonnegative");
    if (std::isinf(bits)) return 0.0;
    const double u = 1.0 - uniform01(rng);  // (0, 1]
    return std::exp((std::log(u) - bits * std::numbers::ln2) / (antennas - 1.0));
}

struct QuantizedDirection {
    ComplexVector direction;  // unit norm
    double sin2_theta;
};

/// h_hat = cos(theta) h/|h| + sin(theta) e with e uniform on the unit sphere
/// of the orthogonal complement of h.
inline QuantizedDirection quantize_direction(const ComplexVector& h, double bits, Rng& rng) {
    const double norm = h.norm();
    if (!(norm > 0.0)) throw domain_error("quantize_direction: zero channel");
    const int n = static_cast<int>(h.size());
    const ComplexVector ht = h / norm;
    const double x = sample_quantization_error(bits, n, rng);
    if (x == 0.0) return {ht, 0.0};
    ComplexVector e;
    do {
        e = complex_gaussian(n, rng);
        e -= ht * ht.dot(e);
    } while (e.norm() < 1e-12);
    e /= e.norm();
    return {std::sqrt(1.0 - x) * ht + std::sqrt(x) * e, x};
}

/// Orthonormal basis (columns) of the complement of span{constraints} in C^n.
inline ComplexMatrix null_space(const std::vector<ComplexVector>& constraints, Eigen::Index n) {
    if (constraints.empty()) return ComplexMatrix::Identity(n, n);
    ComplexMatrix a(n, static_cast<Eigen::Index>(constraints.size()));
    for (std::size_t j = 0; j < constraints.size(); ++j) {
        if (constraints[j].size() != n) throw domain_error("null_space: dimension mismatch");
        a.col(static_cast<Eigen::Index>(j)) = constraints[j];
    }
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(a);
    qr.setThreshold(1e-10);
    const Eigen::Index rank = qr.rank();
    if (rank >= n) throw domain_error("null_space: constraints span the whole space");
    const ComplexMatrix q = qr.householderQ();
    return q.rightCols(n - rank);
}

/// Unit vector orthogonal to every constraint; isotropic inside the null
/// space when it has more than one dimension.
inline ComplexVector zf_beamformer(const std::vector<ComplexVector>& constraints, Eigen::Index n, Rng& rng) {
    const ComplexMatrix basis = null_space(constraints, n);
    if (basis.cols() == 1) return basis.col(0);
    return basis * isotropic_unit(basis.cols(), rng);
}

/// Maximizes |desired^* v|^2 subject to the zero-forcing constraints: the
/// normalized projection of `desired` onto the null space.
inline ComplexVector cb_beamformer(const ComplexVector& desired, const std::vector<ComplexVector>& constraints,
                                   Rng& rng) {
    const Eigen::Index n = desired.size();
    const ComplexMatrix basis = null_space(constraints, n);
    const ComplexVector p = basis * (basis.adjoint() * desired);
    const double norm = p.norm();
    // desired inside the constraint span happens with probability zero
    if (norm < 1e-14 * std::max(1.0, desired.norm())) return basis * isotropic_unit(basis.cols(), rng);
    return p / norm;
}

/// |a^* b|^2
inline double gain(const ComplexVector& a, const ComplexVector& b) { return std::norm(a.dot(b)); }

}  // namespace hetfb::mc
