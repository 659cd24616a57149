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

// Alternating maximization of the Jensen rate bound over the transmit
// covariance and the transmit/receive antenna positions.
//
// One outer iteration updates Q in closed form, then every receive antenna in
// index order, then every transmit antenna in index order. Each antenna move
// maximizes a quadratic form v(x)^H K v(x) of its own field response vector,
// where K is fixed by the other antennas:
//
//   receive side:  K = (I + a Fbar Fbar^H)^{-1}  (Fbar = F without column m)
//   transmit side: K = sum_{k != n} g_k g_k^H
//
// The quadratic form is maximized by minorize-maximize steps: a concave
// quadratic surrogate with certified curvature, maximized exactly over the
// region box intersected with linearized spacing half-planes.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fluid_mimo/types.hpp"

namespace fluid_mimo {

struct SolverConfig {
    double epsilon = 1e-3;        // outer stop: |R(i) - R(i-1)| <= epsilon (bits/s/Hz)
    int max_outer_iters = 100;
    int max_inner_iters = 100;    // MM steps per antenna and outer iteration
    double inner_tolerance = 1.5e-6;  // displacement stop (meters)
    double curvature_safety = 1.0;
    int search_grid = 33;         // points per axis of the seeding scan (0 disables it)
    int search_starts = 8;        // grid local maxima polished in addition to the entry point
    bool update_rx_positions = true;
    bool update_tx_positions = true;

    // Defaults with the inner tolerance expressed as 1e-6 wavelengths.
    static SolverConfig defaults_for(const SystemParams& params);

    void validate() const;
};

struct SolveTrace {
    std::vector<double> objective_per_outer_iter;  // entry 0 is the initial bound
    AntennaLayout final_layout;
    TransmitCovariance final_q;
    int outer_iters_used = 0;
    bool converged = false;

    double final_objective() const { return objective_per_outer_iter.back(); }
    // Largest drop between consecutive entries (0 for a non-decreasing trace).
    double max_decrease() const;
};

// Data of a single-antenna position update.
struct PositionSubproblem {
    CMatrix coefficients;             // Hermitian: B_m (receive, PD) or C_n (transmit, PSD)
    std::vector<Point> fixed_positions;  // other antennas on the same side
    Point current_position = Point::Zero();
    double half_width = 0.0;
    double min_spacing = 0.0;
    Side side = Side::receive;
};

// Q = P G^H G / tr(G^H G). Uses the full budget and attains the Cauchy-Schwarz bound
// tr(G Q G^H) <= ||Q||_F ||G^H G||_F.
TransmitCovariance update_covariance(const CMatrix& tx_field, double power_budget);

// (I + a Fbar_m Fbar_m^H)^{-1}, Fbar_m being F with column m removed.
CMatrix receive_coefficient_matrix(const CMatrix& rx_field, Eigen::Index m, double gain);

// Sum of g_k g_k^H over all columns k != n of G.
CMatrix transmit_coefficient_matrix(const CMatrix& tx_field, Eigen::Index n);

// v(x)^H K v(x) for the side's field response vector v.
double position_objective(const PositionSubproblem& sub, const Point& candidate, const PathAngles& angles,
                          const SystemParams& params);

// Analytic gradient of position_objective with respect to (x, y).
Point position_gradient(const PositionSubproblem& sub, const Point& candidate, const PathAngles& angles,
                        const SystemParams& params);

// Upper bound on the spectral norm of the objective's Hessian anywhere in the plane.
//
// The objective expands to sum_{q,q'} K_{qq'} exp(j k (u_{q'} - u_q) . x) with
// k = 2 pi / lambda and |u| components bounded by 1, so each component of the
// phase-difference direction is at most 2 in magnitude. Each second partial
// derivative of a term is therefore bounded by |K_{qq'}| (2k)^2 = |K_{qq'}| (4 pi / lambda)^2,
// and the spectral norm of a 2x2 matrix is at most twice its largest entry magnitude:
//
//   delta = safety * 2 * (4 pi / lambda)^2 * sum_{q,q'} |K_{qq'}|
//
// Clamped below at 1e-12 so the surrogate stays strictly concave.
double curvature_bound(const PositionSubproblem& sub, const SystemParams& params, double safety);

// Tighter bound using the actual path directions u_q = (sin(theta) cos(phi), cos(theta)):
// the Hessian of term (q, q') is -k^2 K_{qq'} e^{...} d d^T with d = u_{q'} - u_q, whose
// spectral norm is k^2 |K_{qq'}| |d|^2, and diagonal terms are constant. The solver uses this one.
//
//   delta = safety * k^2 * sum_{q != q'} |K_{qq'}| |u_{q'} - u_q|^2
double directional_curvature_bound(const PositionSubproblem& sub, const PathAngles& angles,
                                   const SystemParams& params, double safety);

// Concave quadratic minorizer s(x) = value + gradient . (x - anchor) - curvature / 2 |x - anchor|^2.
struct QuadraticSurrogate {
    Point anchor = Point::Zero();
    double value = 0.0;
    Point gradient = Point::Zero();
    double curvature = 1.0;

    double operator()(const Point& x) const;
    Point unconstrained_maximizer() const { return anchor + gradient / curvature; }
};

QuadraticSurrogate make_surrogate(const PositionSubproblem& sub, const Point& anchor, const PathAngles& angles,
                                  const SystemParams& params, double safety);

// Half-plane normal . x <= offset.
struct HalfPlane {
    Point normal;
    double offset;

    double slack(const Point& x) const { return offset - normal.dot(x); }
};

// Box [-h, h]^2 as four half-planes.
std::vector<HalfPlane> box_constraints(double half_width);

// Conservative half-plane replacing |x - other| >= spacing around the expansion point `at`:
// (at - other)^T (x - other) / |at - other| >= spacing.
HalfPlane linearized_spacing_constraint(const Point& at, const Point& other, double spacing);

// Exact maximizer of the surrogate over the intersection of half-planes, by enumerating
// the interior stationary point, the foot point on every edge, and every vertex.
// Ties prefer the candidate closest to the surrogate's anchor. nullopt if the polygon is empty.
std::optional<Point> maximize_surrogate(const QuadraticSurrogate& surrogate, std::span<const HalfPlane> constraints);

// Minorize-maximize iterations for one antenna, run from the entry position and from the
// best local maxima of a coarse feasible grid scan. The returned point is feasible and its
// objective is at least the objective at entry. Throws std::invalid_argument if the
// entry position is infeasible.
Point solve_position_step(const PositionSubproblem& sub, const PathAngles& angles, const SystemParams& params,
                          const SolverConfig& config);

// Full alternating optimization starting from a feasible layout.
SolveTrace alternate_optimize(const AntennaLayout& initial, const PathAngles& angles, const SystemParams& params,
                              const SolverConfig& config);

// Antennas on a line along x, centered at the origin. Throws std::invalid_argument if
// the array does not fit into [-half_width, half_width].
std::vector<Point> uniform_linear_array(int count, double spacing, double half_width);

// Centered ULA when it fits, otherwise a centered square-ish grid with the same spacing.
std::vector<Point> centered_array(int count, double spacing, double half_width);

// Default starting layout: half-wavelength (or min_spacing, if larger) arrays on both sides.
AntennaLayout initial_layout(int num_tx, int num_rx, double tx_half_width, double rx_half_width,
                             double min_spacing, const SystemParams& params);

}  // namespace fluid_mimo
