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

#include "fluid_mimo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fluid_mimo {

double propagation_delta(const Point& position, double elevation, double azimuth) {
    return position.x() * std::sin(elevation) * std::cos(azimuth) + position.y() * std::cos(elevation);
}

std::vector<Point> path_directions(const PathAngles& angles, Side side) {
    const auto el = angles.elevation(side);
    const auto az = angles.azimuth(side);
    std::vector<Point> dirs(el.size());
    for (std::size_t p = 0; p < el.size(); ++p)
        dirs[p] = Point(std::sin(el[p]) * std::cos(az[p]), std::cos(el[p]));
    return dirs;
}

CVector field_vector(const Point& position, const PathAngles& angles, Side side, const SystemParams& params) {
    const auto el = angles.elevation(side);
    const auto az = angles.azimuth(side);
    const double k = 2.0 * std::numbers::pi / params.wavelength;
    CVector v(static_cast<Eigen::Index>(el.size()));
    for (std::size_t p = 0; p < el.size(); ++p)
        v[static_cast<Eigen::Index>(p)] = std::polar(1.0, k * propagation_delta(position, el[p], az[p]));
    return v;
}

CVector tx_field_vector(const Point& position, const PathAngles& angles, const SystemParams& params) {
    return field_vector(position, angles, Side::transmit, params);
}

CVector rx_field_vector(const Point& position, const PathAngles& angles, const SystemParams& params) {
    return field_vector(position, angles, Side::receive, params);
}

CMatrix field_matrix(std::span<const Point> positions, const PathAngles& angles, Side side,
                     const SystemParams& params) {
    const auto paths = static_cast<Eigen::Index>(angles.elevation(side).size());
    CMatrix m(paths, static_cast<Eigen::Index>(positions.size()));
    for (std::size_t n = 0; n < positions.size(); ++n)
        m.col(static_cast<Eigen::Index>(n)) = field_vector(positions[n], angles, side, params);
    return m;
}

FieldMatrices field_matrices(const AntennaLayout& layout, const PathAngles& angles, const SystemParams& params) {
    return {field_matrix(layout.tx, angles, Side::transmit, params),
            field_matrix(layout.rx, angles, Side::receive, params)};
}

CMatrix assemble_channel(const CMatrix& tx_field, const CMatrix& rx_field, const PathResponseMatrix& sigma) {
    const CMatrix& s = sigma.entries;
    if (s.rows() != rx_field.rows() || s.cols() != tx_field.rows()) {
        std::ostringstream os;
        os << "assemble_channel: path response is " << s.rows() << "x" << s.cols() << " but field matrices need "
           << rx_field.rows() << "x" << tx_field.rows();
        throw std::invalid_argument(os.str());
    }
    return rx_field.adjoint() * s * tx_field;
}

double log2det_identity_plus(double scale, const CMatrix& w) {
    if (w.rows() != w.cols()) throw std::invalid_argument("log2det_identity_plus: matrix is not square");
    if (!std::isfinite(scale) || !w.allFinite()) throw std::invalid_argument("log2det_identity_plus: non-finite input");
    if (w.rows() == 0) return 0.0;
    CMatrix a = scale * w;
    a.diagonal().array() += 1.0;
    Eigen::LDLT<CMatrix> ldlt(a);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw std::runtime_error("log2det_identity_plus: matrix is not positive definite");
    const auto d = ldlt.vectorD();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double di = std::real(d[i]);
        if (!(di > 0.0)) throw std::runtime_error("log2det_identity_plus: non-positive pivot");
        acc += std::log2(di);
    }
    return acc;
}

double effective_gain(const CMatrix& tx_field, const CMatrix& q, const SystemParams& params) {
    const double t = (tx_field * q * tx_field.adjoint()).trace().real();
    return params.path_gain_variance / params.noise_power * t;
}

double upper_bound_rate(const CMatrix& tx_field, const CMatrix& rx_field, const CMatrix& q,
                        const SystemParams& params) {
    if (q.rows() != tx_field.cols() || q.cols() != tx_field.cols())
        throw std::invalid_argument("upper_bound_rate: covariance size does not match the transmit array");
    if (!q.allFinite() || !tx_field.allFinite() || !rx_field.allFinite())
        throw std::invalid_argument("upper_bound_rate: non-finite input");
    const double a = effective_gain(tx_field, q, params);
    // Clamp tiny negative round-off from a PSD Q.
    return std::max(0.0, log2det_identity_plus(std::max(a, 0.0), rx_field.adjoint() * rx_field));
}

double upper_bound_rate(const AntennaLayout& layout, const PathAngles& angles, const TransmitCovariance& q,
                        const SystemParams& params) {
    const auto fm = field_matrices(layout, angles, params);
    return upper_bound_rate(fm.tx, fm.rx, q.matrix(), params);
}

CMatrix jensen_expectation_identity(const CMatrix& p, double alpha2, int num_rx_paths) {
    return CMatrix::Identity(num_rx_paths, num_rx_paths) * (p.trace().real() * alpha2);
}

}  // namespace fluid_mimo
