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

// Far-field geometric channel model for fluid-antenna MIMO.
//
// Every path p is described by an elevation/azimuth pair; an antenna at (x, y)
// sees an extra propagation distance x sin(theta) cos(phi) + y cos(theta)
// relative to the region origin. The field response vector of an antenna
// collects the resulting unit-modulus phase terms over all paths, and the
// channel is H = F^H Sigma G with G (transmit) and F (receive) stacking the
// per-antenna field response vectors as columns.

#include <vector>

#include "fluid_mimo/types.hpp"

namespace fluid_mimo {

// Signed propagation distance difference between `position` and the origin along one path.
double propagation_delta(const Point& position, double elevation, double azimuth);

// In-plane direction vectors (sin(theta) cos(phi), cos(theta)) of every path on one side.
std::vector<Point> path_directions(const PathAngles& angles, Side side);

CVector field_vector(const Point& position, const PathAngles& angles, Side side, const SystemParams& params);
CVector tx_field_vector(const Point& position, const PathAngles& angles, const SystemParams& params);
CVector rx_field_vector(const Point& position, const PathAngles& angles, const SystemParams& params);

// Columns are the field response vectors of `positions` (paths x antennas).
CMatrix field_matrix(std::span<const Point> positions, const PathAngles& angles, Side side,
                     const SystemParams& params);

struct FieldMatrices {
    CMatrix tx;  // G: L_t x N
    CMatrix rx;  // F: L_r x M
};

FieldMatrices field_matrices(const AntennaLayout& layout, const PathAngles& angles, const SystemParams& params);

// H = F^H Sigma G. Throws std::invalid_argument on mismatched dimensions.
CMatrix assemble_channel(const CMatrix& tx_field, const CMatrix& rx_field, const PathResponseMatrix& sigma);

// log2 det(I + scale * W) for Hermitian PSD W, through an LDL^H factorization.
// Throws std::runtime_error if the matrix is not numerically positive definite.
double log2det_identity_plus(double scale, const CMatrix& w);

// Effective receive SNR factor a = (alpha^2 / sigma^2) tr(G Q G^H).
double effective_gain(const CMatrix& tx_field, const CMatrix& q, const SystemParams& params);

// Jensen upper bound on the ergodic rate (bits/s/Hz):
//   log2 det(I_M + (alpha^2 / sigma^2) tr(G Q G^H) F^H F).
double upper_bound_rate(const CMatrix& tx_field, const CMatrix& rx_field, const CMatrix& q,
                        const SystemParams& params);
double upper_bound_rate(const AntennaLayout& layout, const PathAngles& angles, const TransmitCovariance& q,
                        const SystemParams& params);

// Closed form of E{Sigma P Sigma^H} = tr(P) alpha^2 I for i.i.d. CN(0, alpha^2) path gains.
CMatrix jensen_expectation_identity(const CMatrix& p, double alpha2, int num_rx_paths);

}  // namespace fluid_mimo
