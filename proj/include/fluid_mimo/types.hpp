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

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace fluid_mimo {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Point = Eigen::Vector2d;

double dbm_to_milliwatt(double dbm);
double db_to_linear(double db);

// Scenario constants. Powers are linear milliwatts; only power_budget / noise_power matters.
struct SystemParams {
    double wavelength = 1.5;
    double noise_power = 0.0;
    double power_budget = 0.0;
    int num_tx_paths = 3;
    int num_rx_paths = 3;
    double path_gain_variance = 1.0 / 3.0;

    // Builds parameters from a noise level in dBm and an SNR (power budget over noise) in dB.
    static SystemParams from_snr(double noise_dbm, double snr_db, int num_tx_paths, int num_rx_paths,
                                 double wavelength, double path_gain_variance);

    double snr() const { return power_budget / noise_power; }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

enum class Side { transmit, receive };

std::string_view to_string(Side side);

// Elevation/azimuth angles (radians, each in [0, pi]) of every transmit and receive path.
struct PathAngles {
    std::vector<double> tx_elevation;
    std::vector<double> tx_azimuth;
    std::vector<double> rx_elevation;
    std::vector<double> rx_azimuth;

    std::span<const double> elevation(Side side) const;
    std::span<const double> azimuth(Side side) const;

    void validate(const SystemParams& params) const;
};

// Positions of the N transmit and M receive antennas inside their square regions
// [-h, h] x [-h, h], together with the minimum inter-antenna spacing.
struct AntennaLayout {
    std::vector<Point> tx;
    std::vector<Point> rx;
    double tx_half_width = 0.0;
    double rx_half_width = 0.0;
    double min_spacing = 0.0;

    std::vector<Point>& positions(Side side) { return side == Side::transmit ? tx : rx; }
    const std::vector<Point>& positions(Side side) const { return side == Side::transmit ? tx : rx; }
    double half_width(Side side) const { return side == Side::transmit ? tx_half_width : rx_half_width; }
};

bool in_region(const Point& p, double half_width, double tol = 1e-9);

// Smallest pairwise distance; +inf for fewer than two points.
double min_pairwise_distance(std::span<const Point> points);

bool is_feasible(const AntennaLayout& layout, double tol = 1e-9);

// Throws std::invalid_argument describing the first violated constraint.
void require_feasible(const AntennaLayout& layout, double tol = 1e-9);

// Complex path gains between transmit paths (columns) and receive paths (rows).
struct PathResponseMatrix {
    CMatrix entries;
};

// Hermitian PSD transmit covariance with a trace budget.
class TransmitCovariance {
public:
    TransmitCovariance() = default;
    explicit TransmitCovariance(CMatrix q) : q_(std::move(q)) {}

    static TransmitCovariance zero(Eigen::Index n) { return TransmitCovariance(CMatrix::Zero(n, n)); }

    const CMatrix& matrix() const { return q_; }
    Eigen::Index size() const { return q_.rows(); }
    double trace() const { return q_.trace().real(); }

    double hermitian_defect() const;
    double min_eigenvalue() const;

    // Hermitian within 1e-10, smallest eigenvalue >= -1e-10 * trace, trace <= budget * (1 + 1e-9).
    bool satisfies(double power_budget) const;

private:
    CMatrix q_;
};

}  // namespace fluid_mimo
