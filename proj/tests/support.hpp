// SPDX-License-Identifier: Apache-2.0
//
// fluid-mimo: statistical-CSI rate maximization for fluid-antenna MIMO links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Random instances and brute-force reference computations shared by the test binaries.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fluid_mimo/types.hpp"

namespace fluid_mimo::testing {

inline SystemParams default_params(double snr_db = 15.0) { return SystemParams::from_snr(15.0, snr_db, 3, 3, 1.5, 1.0 / 3.0); }

inline PathAngles random_angles(std::mt19937_64& rng, int lt, int lr) {
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
    auto draw = [&](int n) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& a : v) a = u(rng);
        return v;
    };
    PathAngles a;
    a.tx_elevation = draw(lt);
    a.tx_azimuth = draw(lt);
    a.rx_elevation = draw(lr);
    a.rx_azimuth = draw(lr);
    return a;
}

inline CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

inline CMatrix random_psd(std::mt19937_64& rng, Eigen::Index n, Eigen::Index rank) {
    const CMatrix a = random_matrix(rng, n, rank);
    return a * a.adjoint();
}

inline Point random_point(std::mt19937_64& rng, double half_width) {
    std::uniform_real_distribution<double> u(-half_width, half_width);
    return {u(rng), u(rng)};
}

// Phase of one path written out from scratch: 2 pi / lambda (x sin(el) cos(az) + y cos(el)).
inline std::complex<double> reference_entry(const Point& p, double el, double az, double lambda) {
    const double rho = p.x() * std::sin(el) * std::cos(az) + p.y() * std::cos(el);
    return std::polar(1.0, 2.0 * std::numbers::pi / lambda * rho);
}

// log2 det(I + s W) for Hermitian PSD W from its eigenvalues.
inline double eigen_log2det(double s, const CMatrix& w) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(w);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) acc += std::log2(1.0 + s * es.eigenvalues()(i));
    return acc;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace fluid_mimo::testing
