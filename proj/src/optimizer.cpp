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

#include "fluid_mimo/optimizer.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fluid_mimo/channel.hpp"

namespace fluid_mimo {

SolverConfig SolverConfig::defaults_for(const SystemParams& params) {
    SolverConfig c;
    c.inner_tolerance = 1e-6 * params.wavelength;
    return c;
}

void SolverConfig::validate() const {
    auto fail = [](const char* what) { throw std::invalid_argument(std::string("SolverConfig: ") + what); };
    if (!(epsilon > 0.0)) fail("epsilon must be positive");
    if (max_outer_iters < 1) fail("max_outer_iters must be >= 1");
    if (max_inner_iters < 1) fail("max_inner_iters must be >= 1");
    if (search_grid < 0 || search_grid == 1) fail("search_grid must be 0 or >= 2");
    if (search_starts < 1) fail("search_starts must be >= 1");
    if (!(inner_tolerance >= 0.0)) fail("inner_tolerance must be nonnegative");
    if (!(curvature_safety >= 1.0)) fail("curvature_safety must be >= 1");
}

double SolveTrace::max_decrease() const {
    double worst = 0.0;
    for (std::size_t i = 1; i < objective_per_outer_iter.size(); ++i)
        worst = std::max(worst, objective_per_outer_iter[i - 1] - objective_per_outer_iter[i]);
    return worst;
}

TransmitCovariance update_covariance(const CMatrix& tx_field, double power_budget) {
    CMatrix gram = tx_field.adjoint() * tx_field;
    const double tr = gram.trace().real();
    // Unit-modulus columns force tr(G^H G) = N * L_t.
    if (!(tr > 0.0)) throw std::logic_error("update_covariance: transmit field matrix has zero energy");
    CMatrix q = (power_budget / tr) * gram;
    q = 0.5 * (q + q.adjoint()).eval();
    return TransmitCovariance(std::move(q));
}

CMatrix receive_coefficient_matrix(const CMatrix& rx_field, Eigen::Index m, double gain) {
    const Eigen::Index paths = rx_field.rows();
    CMatrix interference = CMatrix::Zero(paths, paths);
    for (Eigen::Index k = 0; k < rx_field.cols(); ++k)
        if (k != m) interference.noalias() += rx_field.col(k) * rx_field.col(k).adjoint();
    CMatrix a = CMatrix::Identity(paths, paths) + gain * interference;
    CMatrix b = a.llt().solve(CMatrix::Identity(paths, paths));
    return 0.5 * (b + b.adjoint());
}

CMatrix transmit_coefficient_matrix(const CMatrix& tx_field, Eigen::Index n) {
    const Eigen::Index paths = tx_field.rows();
    CMatrix c = CMatrix::Zero(paths, paths);
    for (Eigen::Index k = 0; k < tx_field.cols(); ++k)
        if (k != n) c.noalias() += tx_field.col(k) * tx_field.col(k).adjoint();
    return c;
}

double position_objective(const PositionSubproblem& sub, const Point& candidate, const PathAngles& angles,
                          const SystemParams& params) {
    const CVector v = field_vector(candidate, angles, sub.side, params);
    return (v.adjoint() * sub.coefficients * v).value().real();
}

Point position_gradient(const PositionSubproblem& sub, const Point& candidate, const PathAngles& angles,
                        const SystemParams& params) {
    // d v_q / dx = j k u_q v_q, so d(v^H K v)/dx = 2 Re{ sum_q conj(j k u_q v_q) (K v)_q }.
    const CVector v = field_vector(candidate, angles, sub.side, params);
    const CVector kv = sub.coefficients * v;
    const auto dirs = path_directions(angles, sub.side);
    const double k = 2.0 * std::numbers::pi / params.wavelength;
    Point grad = Point::Zero();
    for (Eigen::Index q = 0; q < v.size(); ++q) {
        // conj(j v_q) * (K v)_q = -j conj(v_q) (K v)_q; real part is Im(conj(v_q) (K v)_q).
        const double im = (std::conj(v[q]) * kv[q]).imag();
        grad += 2.0 * k * im * dirs[static_cast<std::size_t>(q)];
    }
    return grad;
}

double curvature_bound(const PositionSubproblem& sub, const SystemParams& params, double safety) {
    const double two_k = 4.0 * std::numbers::pi / params.wavelength;
    const double delta = safety * 2.0 * two_k * two_k * sub.coefficients.cwiseAbs().sum();
    return std::max(delta, 1e-12);
}

double directional_curvature_bound(const PositionSubproblem& sub, const PathAngles& angles,
                                   const SystemParams& params, double safety) {
    const auto dirs = path_directions(angles, sub.side);
    const double k = 2.0 * std::numbers::pi / params.wavelength;
    double acc = 0.0;
    for (Eigen::Index q = 0; q < sub.coefficients.rows(); ++q)
        for (Eigen::Index r = 0; r < sub.coefficients.cols(); ++r)
            if (q != r)
                acc += std::abs(sub.coefficients(q, r)) *
                       (dirs[static_cast<std::size_t>(r)] - dirs[static_cast<std::size_t>(q)]).squaredNorm();
    return std::max(safety * k * k * acc, 1e-12);
}

double QuadraticSurrogate::operator()(const Point& x) const {
    const Point d = x - anchor;
    return value + gradient.dot(d) - 0.5 * curvature * d.squaredNorm();
}

QuadraticSurrogate make_surrogate(const PositionSubproblem& sub, const Point& anchor, const PathAngles& angles,
                                  const SystemParams& params, double safety) {
    QuadraticSurrogate s;
    s.anchor = anchor;
    s.value = position_objective(sub, anchor, angles, params);
    s.gradient = position_gradient(sub, anchor, angles, params);
    s.curvature = curvature_bound(sub, params, safety);
    return s;
}

std::vector<HalfPlane> box_constraints(double half_width) {
    return {{Point(1.0, 0.0), half_width},
            {Point(-1.0, 0.0), half_width},
            {Point(0.0, 1.0), half_width},
            {Point(0.0, -1.0), half_width}};
}

HalfPlane linearized_spacing_constraint(const Point& at, const Point& other, double spacing) {
    const Point diff = at - other;
    const double dist = diff.norm();
    assert(dist > 0.0 && "coincident antennas cannot come from a feasible layout");
    const Point u = diff / dist;
    // u . (x - other) >= spacing  <=>  -u . x <= -(spacing + u . other)
    return {-u, -(spacing + u.dot(other))};
}

namespace {

bool inside(const Point& x, std::span<const HalfPlane> constraints) {
    for (const auto& h : constraints)
        if (h.slack(x) < -1e-12 * (1.0 + std::abs(h.offset))) return false;
    return true;
}

}  // namespace

std::optional<Point> maximize_surrogate(const QuadraticSurrogate& surrogate, std::span<const HalfPlane> constraints) {
    const Point center = surrogate.unconstrained_maximizer();
    if (inside(center, constraints)) return center;

    std::optional<Point> best;
    double best_value = -std::numeric_limits<double>::infinity();
    auto consider = [&](const Point& x) {
        if (!x.allFinite() || !inside(x, constraints)) return;
        const double v = surrogate(x);
        const double tie = 1e-12 * (1.0 + std::abs(v));
        bool take = !best || v > best_value + tie;
        if (!take && v >= best_value - tie)
            take = (x - surrogate.anchor).squaredNorm() < (*best - surrogate.anchor).squaredNorm();
        if (take) {
            best = x;
            best_value = v;
        }
    };

    // The surrogate is an isotropic quadratic, so its maximizer on a line is the
    // orthogonal projection of the unconstrained maximizer onto that line.
    for (const auto& h : constraints) {
        const double nn = h.normal.squaredNorm();
        consider(center + (h.slack(center) / nn) * h.normal);
    }
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        for (std::size_t j = i + 1; j < constraints.size(); ++j) {
            const auto& a = constraints[i];
            const auto& b = constraints[j];
            const double det = a.normal.x() * b.normal.y() - a.normal.y() * b.normal.x();
            if (std::abs(det) < 1e-14) continue;
            const Point v((a.offset * b.normal.y() - b.offset * a.normal.y()) / det,
                          (a.normal.x() * b.offset - b.normal.x() * a.offset) / det);
            consider(v);
        }
    }
    return best;
}

Point solve_position_step(const PositionSubproblem& sub, const PathAngles& angles, const SystemParams& params,
                          const SolverConfig& config) {
    constexpr double tol = 1e-9;
    if (!in_region(sub.current_position, sub.half_width, tol))
        throw std::invalid_argument("solve_position_step: entry position lies outside the region");
    for (const auto& other : sub.fixed_positions) {
        if ((sub.current_position - other).norm() < sub.min_spacing - tol)
            throw std::invalid_argument("solve_position_step: entry position violates the minimum spacing");
    }

    const double delta = directional_curvature_bound(sub, angles, params, config.curvature_safety);

    struct Candidate {
        Point x;
        double value;
    };
    auto polish = [&](Candidate c) {
        std::vector<HalfPlane> constraints;
        for (int it = 0; it < config.max_inner_iters; ++it) {
            QuadraticSurrogate s;
            s.anchor = c.x;
            s.value = c.value;
            s.gradient = position_gradient(sub, c.x, angles, params);
            s.curvature = delta;

            constraints = box_constraints(sub.half_width);
            for (const auto& other : sub.fixed_positions)
                constraints.push_back(linearized_spacing_constraint(c.x, other, sub.min_spacing));

            auto next = maximize_surrogate(s, constraints);
            if (!next) break;
            const Point y = next->cwiseMax(-sub.half_width).cwiseMin(sub.half_width);
            const double fy = position_objective(sub, y, angles, params);
            if (!(fy >= c.value)) break;
            const double step = (y - c.x).norm();
            c = {y, fy};
            if (step < config.inner_tolerance) break;
        }
        return c;
    };

    Candidate best = polish({sub.current_position, position_objective(sub, sub.current_position, angles, params)});
    if (config.search_grid < 2) return best.x;

    // Coarse scan of exactly feasible grid points. Grid local maxima are polished as
    // extra starting points, best first.
    const int n = config.search_grid;
    const double step = 2.0 * sub.half_width / (n - 1);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> grid(static_cast<std::size_t>(n * n), nan);
    auto at = [&](int i, int j) -> double& { return grid[static_cast<std::size_t>(i * n + j)]; };
    auto point = [&](int i, int j) { return Point(-sub.half_width + i * step, -sub.half_width + j * step); };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Point p = point(i, j);
            bool ok = true;
            for (const auto& other : sub.fixed_positions) ok = ok && (p - other).norm() >= sub.min_spacing;
            if (ok) at(i, j) = position_objective(sub, p, angles, params);
        }
    }
    std::vector<Candidate> peaks;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = at(i, j);
            if (std::isnan(v)) continue;
            bool peak = true;
            for (int di = -1; di <= 1 && peak; ++di)
                for (int dj = -1; dj <= 1 && peak; ++dj) {
                    const int a = i + di;
                    const int b = j + dj;
                    if ((di || dj) && a >= 0 && a < n && b >= 0 && b < n && at(a, b) > v) peak = false;
                }
            if (peak) peaks.push_back({point(i, j), v});
        }
    }
    std::stable_sort(peaks.begin(), peaks.end(), [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
    if (peaks.size() > static_cast<std::size_t>(config.search_starts)) peaks.resize(static_cast<std::size_t>(config.search_starts));
    for (const auto& p : peaks) {
        const Candidate c = polish(p);
        if (c.value > best.value + 1e-12 * (1.0 + std::abs(best.value))) best = c;
    }
    return best.x;
}

namespace {

PositionSubproblem make_subproblem(const AntennaLayout& layout, Side side, std::size_t index, CMatrix coefficients) {
    const auto& pts = layout.positions(side);
    PositionSubproblem sub;
    sub.coefficients = std::move(coefficients);
    sub.current_position = pts[index];
    sub.half_width = layout.half_width(side);
    sub.min_spacing = layout.min_spacing;
    sub.side = side;
    sub.fixed_positions.reserve(pts.size() - 1);
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (k != index) sub.fixed_positions.push_back(pts[k]);
    return sub;
}

}  // namespace

SolveTrace alternate_optimize(const AntennaLayout& initial, const PathAngles& angles, const SystemParams& params,
                              const SolverConfig& config) {
    params.validate();
    angles.validate(params);
    config.validate();
    require_feasible(initial);
    if (initial.tx.empty() || initial.rx.empty())
        throw std::invalid_argument("alternate_optimize: both sides need at least one antenna");

    SolveTrace trace;
    AntennaLayout layout = initial;
    auto fm = field_matrices(layout, angles, params);
    CMatrix& g = fm.tx;
    CMatrix& f = fm.rx;

    // Iteration 0 uses the optimal covariance for the initial transmit array.
    TransmitCovariance q = update_covariance(g, params.power_budget);
    trace.objective_per_outer_iter.push_back(upper_bound_rate(g, f, q.matrix(), params));

    for (int iter = 1; iter <= config.max_outer_iters; ++iter) {
        q = update_covariance(g, params.power_budget);
        const double gain = effective_gain(g, q.matrix(), params);

        if (config.update_rx_positions) {
            for (std::size_t m = 0; m < layout.rx.size(); ++m) {
                const auto col = static_cast<Eigen::Index>(m);
                auto sub = make_subproblem(layout, Side::receive, m, receive_coefficient_matrix(f, col, gain));
                layout.rx[m] = solve_position_step(sub, angles, params, config);
                f.col(col) = field_vector(layout.rx[m], angles, Side::receive, params);
            }
        }
        if (config.update_tx_positions) {
            for (std::size_t n = 0; n < layout.tx.size(); ++n) {
                const auto col = static_cast<Eigen::Index>(n);
                auto sub = make_subproblem(layout, Side::transmit, n, transmit_coefficient_matrix(g, col));
                layout.tx[n] = solve_position_step(sub, angles, params, config);
                g.col(col) = field_vector(layout.tx[n], angles, Side::transmit, params);
            }
        }

        // The bound is reported with Q re-optimized for the moved transmit array, which is
        // what the transmit-position subproblem maximizes.
        q = update_covariance(g, params.power_budget);
        const double r = upper_bound_rate(g, f, q.matrix(), params);
        const double prev = trace.objective_per_outer_iter.back();
        trace.objective_per_outer_iter.push_back(r);
        trace.outer_iters_used = iter;
        if (std::abs(r - prev) <= config.epsilon) {
            trace.converged = true;
            break;
        }
    }

    trace.final_q = update_covariance(g, params.power_budget);
    trace.final_layout = std::move(layout);
    return trace;
}

std::vector<Point> uniform_linear_array(int count, double spacing, double half_width) {
    if (count < 1) throw std::invalid_argument("uniform_linear_array: count must be >= 1");
    const double length = (count - 1) * spacing;
    if (length > 2.0 * half_width * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "uniform linear array of " << count << " antennas (length " << length
           << ") does not fit a region of size " << 2.0 * half_width;
        throw std::invalid_argument(os.str());
    }
    std::vector<Point> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double x = (i - 0.5 * (count - 1)) * spacing;
        pts[static_cast<std::size_t>(i)] = Point(std::clamp(x, -half_width, half_width), 0.0);
    }
    return pts;
}

std::vector<Point> centered_array(int count, double spacing, double half_width) {
    if ((count - 1) * spacing <= 2.0 * half_width * (1.0 + 1e-12))
        return uniform_linear_array(count, spacing, half_width);
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
    const int rows = (count + cols - 1) / cols;
    if ((cols - 1) * spacing > 2.0 * half_width * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << count << " antennas with spacing " << spacing << " do not fit a region of size " << 2.0 * half_width;
        throw std::invalid_argument(os.str());
    }
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int r = i / cols;
        const int c = i % cols;
        pts.emplace_back((c - 0.5 * (cols - 1)) * spacing, (r - 0.5 * (rows - 1)) * spacing);
    }
    return pts;
}

AntennaLayout initial_layout(int num_tx, int num_rx, double tx_half_width, double rx_half_width,
                             double min_spacing, const SystemParams& params) {
    const double spacing = std::max(0.5 * params.wavelength, min_spacing);
    AntennaLayout layout;
    layout.tx = centered_array(num_tx, spacing, tx_half_width);
    layout.rx = centered_array(num_rx, spacing, rx_half_width);
    layout.tx_half_width = tx_half_width;
    layout.rx_half_width = rx_half_width;
    layout.min_spacing = min_spacing;
    return layout;
}

}  // namespace fluid_mimo
