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

#include "fluid_mimo/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fluid_mimo {

double dbm_to_milliwatt(double dbm) { return std::pow(10.0, dbm / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

SystemParams SystemParams::from_snr(double noise_dbm, double snr_db, int num_tx_paths, int num_rx_paths,
                                    double wavelength, double path_gain_variance) {
    SystemParams p;
    p.wavelength = wavelength;
    p.noise_power = dbm_to_milliwatt(noise_dbm);
    p.power_budget = dbm_to_milliwatt(noise_dbm + snr_db);
    p.num_tx_paths = num_tx_paths;
    p.num_rx_paths = num_rx_paths;
    p.path_gain_variance = path_gain_variance;
    return p;
}

void SystemParams::validate() const {
    auto fail = [](const char* what) { throw std::invalid_argument(std::string("SystemParams: ") + what); };
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) fail("wavelength must be positive");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power)) fail("noise_power must be positive");
    if (!(power_budget > 0.0) || !std::isfinite(power_budget)) fail("power_budget must be positive");
    if (num_tx_paths < 1) fail("num_tx_paths must be >= 1");
    if (num_rx_paths < 1) fail("num_rx_paths must be >= 1");
    if (!(path_gain_variance > 0.0) || !std::isfinite(path_gain_variance)) fail("path_gain_variance must be positive");
}

std::string_view to_string(Side side) { return side == Side::transmit ? "transmit" : "receive"; }

std::span<const double> PathAngles::elevation(Side side) const {
    return side == Side::transmit ? std::span<const double>(tx_elevation) : std::span<const double>(rx_elevation);
}

std::span<const double> PathAngles::azimuth(Side side) const {
    return side == Side::transmit ? std::span<const double>(tx_azimuth) : std::span<const double>(rx_azimuth);
}

void PathAngles::validate(const SystemParams& params) const {
    auto check = [](const std::vector<double>& v, std::size_t n, const char* name) {
        if (v.size() != n) {
            std::ostringstream os;
            os << "PathAngles: " << name << " has " << v.size() << " entries, expected " << n;
            throw std::invalid_argument(os.str());
        }
        for (double a : v) {
            if (!(a >= 0.0 && a <= std::numbers::pi)) {
                std::ostringstream os;
                os << "PathAngles: " << name << " entry " << a << " outside [0, pi]";
                throw std::invalid_argument(os.str());
            }
        }
    };
    const auto lt = static_cast<std::size_t>(params.num_tx_paths);
    const auto lr = static_cast<std::size_t>(params.num_rx_paths);
    check(tx_elevation, lt, "tx_elevation");
    check(tx_azimuth, lt, "tx_azimuth");
    check(rx_elevation, lr, "rx_elevation");
    check(rx_azimuth, lr, "rx_azimuth");
}

bool in_region(const Point& p, double half_width, double tol) {
    return std::abs(p.x()) <= half_width + tol && std::abs(p.y()) <= half_width + tol;
}

double min_pairwise_distance(std::span<const Point> points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, (points[i] - points[j]).norm());
    return best;
}

namespace {

std::string first_violation(const AntennaLayout& layout, double tol) {
    for (Side side : {Side::transmit, Side::receive}) {
        const auto& pts = layout.positions(side);
        const double h = layout.half_width(side);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!pts[i].allFinite() || !in_region(pts[i], h, tol)) {
                std::ostringstream os;
                os << to_string(side) << " antenna " << i << " at (" << pts[i].x() << ", " << pts[i].y()
                   << ") lies outside the region of half-width " << h;
                return os.str();
            }
        }
        const double d = min_pairwise_distance(pts);
        if (d < layout.min_spacing - tol) {
            std::ostringstream os;
            os << to_string(side) << " antennas closer than the minimum spacing (" << d << " < "
               << layout.min_spacing << ")";
            return os.str();
        }
    }
    return {};
}

}  // namespace

bool is_feasible(const AntennaLayout& layout, double tol) { return first_violation(layout, tol).empty(); }

void require_feasible(const AntennaLayout& layout, double tol) {
    if (auto why = first_violation(layout, tol); !why.empty())
        throw std::invalid_argument("infeasible antenna layout: " + why);
}

double TransmitCovariance::hermitian_defect() const {
    if (q_.size() == 0) return 0.0;
    return (q_ - q_.adjoint()).cwiseAbs().maxCoeff();
}

double TransmitCovariance::min_eigenvalue() const {
    if (q_.size() == 0) return 0.0;
    const CMatrix sym = 0.5 * (q_ + q_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool TransmitCovariance::satisfies(double power_budget) const {
    if (!q_.allFinite() || q_.rows() != q_.cols()) return false;
    const double tr = trace();
    return hermitian_defect() <= 1e-10 && min_eigenvalue() >= -1e-10 * std::max(tr, 0.0) &&
           tr <= power_budget * (1.0 + 1e-9);
}

}  // namespace fluid_mimo
