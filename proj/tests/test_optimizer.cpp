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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fluid_mimo/channel.hpp"
#include "fluid_mimo/evaluation.hpp"
#include "fluid_mimo/optimizer.hpp"
#include "support.hpp"

using namespace fluid_mimo;
using namespace fluid_mimo::testing;
using std::numbers::pi;

namespace {

// Random subproblem whose coefficient matrix comes from actual field matrices.
PositionSubproblem random_subproblem(std::mt19937_64& rng, const PathAngles& angles, const SystemParams& params,
                                     Side side) {
    std::vector<Point> pts = {random_point(rng, 2.25), random_point(rng, 2.25), random_point(rng, 2.25),
                              random_point(rng, 2.25)};
    PositionSubproblem sub;
    sub.side = side;
    sub.half_width = 2.25;
    sub.min_spacing = 0.0;
    const CMatrix fm = field_matrix(pts, angles, side, params);
    std::uniform_real_distribution<double> a(0.01, 5.0);
    sub.coefficients = side == Side::receive ? receive_coefficient_matrix(fm, 0, a(rng))
                                             : transmit_coefficient_matrix(fm, 0);
    sub.current_position = pts[0];
    return sub;
}

// Spectral norm of the finite-difference Hessian built from the analytic gradient.
double fd_hessian_norm(const PositionSubproblem& sub, const Point& x, const PathAngles& angles,
                       const SystemParams& params) {
    const double h = 1e-5;
    Eigen::Matrix2d hess;
    for (int c = 0; c < 2; ++c) {
        Point e = Point::Zero();
        e(c) = h;
        hess.col(c) = (position_gradient(sub, x + e, angles, params) - position_gradient(sub, x - e, angles, params)) /
                      (2 * h);
    }
    const Eigen::Matrix2d sym = 0.5 * (hess + hess.transpose());
    return sym.cwiseAbs().maxCoeff() == 0.0 ? 0.0
                                             : Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(sym)
                                                   .eigenvalues()
                                                   .cwiseAbs()
                                                   .maxCoeff();
}

}  // namespace

TEST_SUITE("covariance") {
    TEST_CASE("closed form for co-located antennas") {
        const double pm = 7.0;
        const CMatrix g = CMatrix::Ones(3, 4);
        const auto q = update_covariance(g, pm);
        CHECK((q.matrix() - CMatrix::Constant(4, 4, pm / 4)).norm() < 1e-12);
        CHECK((g * q.matrix() * g.adjoint()).trace().real() == doctest::Approx(pm * 3 * 4).epsilon(1e-12));
    }

    TEST_CASE("single antenna takes the whole budget") {
        std::mt19937_64 rng(1);
        const auto q = update_covariance(random_matrix(rng, 3, 1), 2.5);
        REQUIRE(q.size() == 1);
        CHECK(std::abs(q.matrix()(0, 0) - cdouble(2.5, 0.0)) < 1e-12);
    }

    TEST_CASE("closed form attains the Cauchy-Schwarz bound") {
        std::mt19937_64 rng(2);
        const double pm = 10.0;
        for (int t = 0; t < 10; ++t) {
            const CMatrix g = random_matrix(rng, 3, 4);
            const auto q = update_covariance(g, pm);
            CHECK(q.satisfies(pm));
            CHECK(std::abs(q.trace() - pm) <= 1e-9 * pm);
            const CMatrix gram = g.adjoint() * g;
            const double value = (g * q.matrix() * g.adjoint()).trace().real();
            const double q_norm = q.matrix().norm();
            CHECK(value == doctest::Approx(q_norm * gram.norm()).epsilon(1e-12));
            for (int k = 0; k < 1000; ++k) {
                CMatrix r = random_psd(rng, 4, 1 + k % 4);
                r *= q_norm / r.norm();
                CHECK((g * r * g.adjoint()).trace().real() <= value * (1 + 1e-12));
            }
        }
    }

    TEST_CASE("zero field matrix is a logic error") { CHECK_THROWS_AS(update_covariance(CMatrix::Zero(2, 2), 1.0), std::logic_error); }
}

TEST_SUITE("coefficients") {
    TEST_CASE("receive coefficient matrix") {
        std::mt19937_64 rng(3);
        CHECK(receive_coefficient_matrix(random_matrix(rng, 3, 1), 0, 4.0).isApprox(CMatrix::Identity(3, 3)));
        CHECK(receive_coefficient_matrix(random_matrix(rng, 3, 4), 2, 0.0).isApprox(CMatrix::Identity(3, 3)));
        for (int t = 0; t < 20; ++t) {
            const CMatrix f = random_matrix(rng, 3, 4);
            const Eigen::Index m = t % 4;
            CMatrix fbar(3, 3);
            for (Eigen::Index c = 0, k = 0; c < 4; ++c)
                if (c != m) fbar.col(k++) = f.col(c);
            const double a = 0.5 + t;
            const CMatrix b = receive_coefficient_matrix(f, m, a);
            const CMatrix back = b * (CMatrix::Identity(3, 3) + a * fbar * fbar.adjoint());
            CHECK((back - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-9);
            CHECK((b - b.adjoint()).norm() == 0.0);
            CHECK(Eigen::SelfAdjointEigenSolver<CMatrix>(b).eigenvalues().minCoeff() > 0.0);
        }
    }

    TEST_CASE("transmit coefficient matrix") {
        std::mt19937_64 rng(4);
        CHECK(transmit_coefficient_matrix(random_matrix(rng, 3, 1), 0).norm() == 0.0);
        CHECK(transmit_coefficient_matrix(CMatrix::Ones(3, 2), 0).isApprox(CMatrix::Ones(3, 3)));
        for (int t = 0; t < 20; ++t) {
            const CMatrix g = random_matrix(rng, 3, 4);
            const Eigen::Index n = t % 4;
            const CMatrix c = transmit_coefficient_matrix(g, n);
            CHECK((c + g.col(n) * g.col(n).adjoint() - g * g.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
            CHECK(Eigen::SelfAdjointEigenSolver<CMatrix>(c).eigenvalues().minCoeff() >= -1e-10);
        }
    }

    TEST_CASE("transmit objective equivalence") {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 20; ++t) {
            const CMatrix g = random_matrix(rng, 3, 4);
            const CMatrix a = g.adjoint() * g;
            const CMatrix b = g * g.adjoint();
            CHECK(rel_diff((a * a).trace().real(), (b * b).trace().real()) < 1e-9);
        }
    }
}

TEST_SUITE("position objective") {
    TEST_CASE("objective special cases and recomputation") {
        std::mt19937_64 rng(6);
        const auto params = default_params();
        const auto angles = random_angles(rng, 3, 3);
        PositionSubproblem sub;
        sub.side = Side::receive;
        sub.half_width = 2.25;
        sub.coefficients = CMatrix::Identity(3, 3);
        for (int t = 0; t < 10; ++t) {
            const Point x = random_point(rng, 2.25);
            CHECK(position_objective(sub, x, angles, params) == doctest::Approx(3.0).epsilon(1e-12));
            CHECK(position_gradient(sub, x, angles, params).norm() < 1e-9);
        }
        sub.side = Side::transmit;
        sub.coefficients = CMatrix::Zero(3, 3);
        CHECK(position_objective(sub, random_point(rng, 2.25), angles, params) == 0.0);

        for (int t = 0; t < 50; ++t) {
            const Side side = t % 2 ? Side::receive : Side::transmit;
            auto s = random_subproblem(rng, angles, params, side);
            const Point x = random_point(rng, 2.25);
            CVector v(3);
            const auto el = angles.elevation(side);
            const auto az = angles.azimuth(side);
            for (int q = 0; q < 3; ++q) v(q) = reference_entry(x, el[static_cast<std::size_t>(q)], az[static_cast<std::size_t>(q)], 1.5);
            const double direct = (v.adjoint() * s.coefficients * v)(0, 0).real();
            CHECK(rel_diff(position_objective(s, x, angles, params), direct) < 1e-12);
        }
    }

    TEST_CASE("analytic gradient against central differences") {
        std::mt19937_64 rng(7);
        const auto params = default_params();
        const double h = 1e-6 * params.wavelength;
        for (int t = 0; t < 100; ++t) {
            const auto angles = random_angles(rng, 3, 3);
            auto sub = random_subproblem(rng, angles, params, t % 2 ? Side::receive : Side::transmit);
            const Point x = random_point(rng, 2.0);
            const Point grad = position_gradient(sub, x, angles, params);
            Point fd;
            for (int c = 0; c < 2; ++c) {
                Point e = Point::Zero();
                e(c) = h;
                fd(c) = (position_objective(sub, x + e, angles, params) - position_objective(sub, x - e, angles, params)) /
                        (2 * h);
            }
            CHECK((grad - fd).norm() <= 1e-5 * std::max(1.0, grad.norm()));
        }
    }

    TEST_CASE("objective depending on y only has no x gradient") {
        std::mt19937_64 rng(8);
        const auto params = default_params();
        PathAngles angles;
        angles.rx_elevation = {0.4, 2.2, 1.1};
        angles.rx_azimuth = {pi / 2, pi / 2, pi / 2};
        angles.tx_elevation = angles.rx_elevation;
        angles.tx_azimuth = angles.rx_azimuth;
        PositionSubproblem sub;
        sub.side = Side::receive;
        sub.half_width = 2.25;
        sub.coefficients = random_psd(rng, 3, 3);
        for (int t = 0; t < 20; ++t) CHECK(std::abs(position_gradient(sub, random_point(rng, 2.0), angles, params).x()) < 1e-12);
    }
}

TEST_SUITE("curvature") {
    TEST_CASE("uniform bound formula") {
        const auto params = default_params();
        PositionSubproblem sub;
        sub.coefficients = CMatrix::Identity(3, 3);
        const double k2 = 4 * pi / params.wavelength;
        CHECK(curvature_bound(sub, params, 1.0) == doctest::Approx(2 * k2 * k2 * 3).epsilon(1e-14));
        CHECK(curvature_bound(sub, params, 2.0) == doctest::Approx(4 * k2 * k2 * 3).epsilon(1e-14));
        sub.coefficients = CMatrix::Zero(3, 3);
        CHECK(curvature_bound(sub, params, 1.0) == 1e-12);
    }

    TEST_CASE("sampled Hessians stay below both bounds") {
        std::mt19937_64 rng(9);
        const auto params = default_params();
        for (int t = 0; t < 200; ++t) {
            const auto angles = random_angles(rng, 3, 3);
            auto sub = random_subproblem(rng, angles, params, t % 2 ? Side::receive : Side::transmit);
            const double uniform = curvature_bound(sub, params, 1.0);
            const double directional = directional_curvature_bound(sub, angles, params, 1.0);
            CHECK(directional <= uniform * (1 + 1e-12));
            for (int k = 0; k < 10; ++k) {
                const double hn = fd_hessian_norm(sub, random_point(rng, 2.25), angles, params);
                CHECK(hn <= directional * (1 + 1e-6) + 1e-6);
            }
        }
    }

    TEST_CASE("surrogate minorizes the objective") {
        std::mt19937_64 rng(10);
        const auto params = default_params();
        for (int t = 0; t < 200; ++t) {
            const auto angles = random_angles(rng, 3, 3);
            auto sub = random_subproblem(rng, angles, params, t % 2 ? Side::receive : Side::transmit);
            const Point x0 = random_point(rng, 2.25);
            const auto s = make_surrogate(sub, x0, angles, params, 1.0);
            auto tight = s;
            tight.curvature = directional_curvature_bound(sub, angles, params, 1.0);
            CHECK(s(x0) == doctest::Approx(position_objective(sub, x0, angles, params)));
            for (int k = 0; k < 20; ++k) {
                const Point x = random_point(rng, 2.25);
                const double p = position_objective(sub, x, angles, params);
                CHECK(s(x) <= p + 1e-9);
                CHECK(tight(x) <= p + 1e-9);
            }
        }
    }
}

TEST_SUITE("polygon") {
    TEST_CASE("linearized spacing constraint is conservative") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 200; ++t) {
            const Point other = random_point(rng, 2.0);
            Point at = random_point(rng, 2.0);
            if ((at - other).norm() < 1e-3) continue;
            const double d = 0.75;
            const auto h = linearized_spacing_constraint(at, other, d);
            for (int k = 0; k < 20; ++k) {
                const Point x = random_point(rng, 3.0);
                if (h.slack(x) >= 0.0) CHECK((x - other).norm() >= d - 1e-12);
            }
        }
    }

    TEST_CASE("exact maximizer against a dense grid") {
        std::mt19937_64 rng(12);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (int t = 0; t < 100; ++t) {
            QuadraticSurrogate s;
            s.anchor = random_point(rng, 0.5);
            s.value = u(rng);
            s.gradient = Point(u(rng), u(rng)) * 5;
            s.curvature = 0.5 + std::abs(u(rng));
            auto cons = box_constraints(1.0);
            cons.push_back(linearized_spacing_constraint(s.anchor, s.anchor + random_point(rng, 1.0).normalized(), 0.6));
            const auto best = maximize_surrogate(s, cons);
            REQUIRE(best.has_value());
            for (const auto& h : cons) CHECK(h.slack(*best) >= -1e-9);
            double grid = -std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 400; ++i) {
                for (int j = 0; j <= 400; ++j) {
                    const Point x(-1.0 + i / 200.0, -1.0 + j / 200.0);
                    bool ok = true;
                    for (const auto& h : cons) ok = ok && h.slack(x) >= 0.0;
                    if (ok) grid = std::max(grid, s(x));
                }
            }
            CHECK(s(*best) >= grid - 1e-12);
        }
    }

    TEST_CASE("interior maximizer, edge maximizer and empty polygon") {
        QuadraticSurrogate s;
        s.gradient = Point(0.1, 0.0);
        s.curvature = 1.0;
        const auto box = box_constraints(1.0);
        CHECK((*maximize_surrogate(s, box) - Point(0.1, 0.0)).norm() < 1e-15);

        std::vector<HalfPlane> empty = {{Point(1, 0), -1.0}, {Point(-1, 0), -1.0}};
        CHECK_FALSE(maximize_surrogate(s, empty).has_value());

        // Unconstrained maximizer above the box: the answer is its projection onto the top edge.
        QuadraticSurrogate far;
        far.anchor = Point(0.2, 0.0);
        far.gradient = Point(0.0, 3.0) - far.anchor;  // unconstrained maximizer (0, 3)
        far.curvature = 1.0;
        const auto best = maximize_surrogate(far, box);
        REQUIRE(best.has_value());
        CHECK((*best - Point(0.0, 1.0)).norm() < 1e-12);
    }
}

TEST_SUITE("position step") {
    TEST_CASE("constant objective keeps the entry position") {
        std::mt19937_64 rng(13);
        const auto params = default_params();
        const auto angles = random_angles(rng, 3, 3);
        PositionSubproblem sub;
        sub.coefficients = CMatrix::Identity(3, 3);
        sub.half_width = 2.25;
        sub.current_position = Point(0.3, -0.7);
        const Point out = solve_position_step(sub, angles, params, SolverConfig::defaults_for(params));
        CHECK((out - sub.current_position).norm() < 1e-12);
    }

    TEST_CASE("infeasible entry is rejected") {
        std::mt19937_64 rng(14);
        const auto params = default_params();
        const auto angles = random_angles(rng, 3, 3);
        PositionSubproblem sub;
        sub.coefficients = CMatrix::Identity(3, 3);
        sub.half_width = 1.0;
        sub.current_position = Point(1.5, 0.0);
        CHECK_THROWS_AS(solve_position_step(sub, angles, params, SolverConfig{}), std::invalid_argument);
        sub.current_position = Point(0.0, 0.0);
        sub.fixed_positions = {Point(0.1, 0.0)};
        sub.min_spacing = 0.5;
        CHECK_THROWS_AS(solve_position_step(sub, angles, params, SolverConfig{}), std::invalid_argument);
    }

    TEST_CASE("steps are feasible and never decrease the objective") {
        std::mt19937_64 rng(15);
        const auto params = default_params();
        const auto cfg = SolverConfig::defaults_for(params);
        for (int t = 0; t < 40; ++t) {
            const auto angles = random_angles(rng, 3, 3);
            const Side side = t % 2 ? Side::receive : Side::transmit;
            AntennaLayout l = initial_layout(4, 4, 2.25, 2.25, 0.75, params);
            const CMatrix fm = field_matrix(l.positions(side), angles, side, params);
            PositionSubproblem sub;
            sub.side = side;
            sub.half_width = 2.25;
            sub.min_spacing = 0.75;
            sub.coefficients = side == Side::receive ? receive_coefficient_matrix(fm, 1, 3.0) : transmit_coefficient_matrix(fm, 1);
            const auto& pts = l.positions(side);
            sub.current_position = pts[1];
            sub.fixed_positions = {pts[0], pts[2], pts[3]};
            // Neighbours sit exactly at distance D from the entry position.
            const Point out = solve_position_step(sub, angles, params, cfg);
            CHECK(in_region(out, 2.25));
            for (const auto& o : sub.fixed_positions) CHECK((out - o).norm() >= 0.75 - 1e-9);
            CHECK(position_objective(sub, out, angles, params) >= position_objective(sub, sub.current_position, angles, params));
        }
    }

    TEST_CASE("single antenna reaches the grid optimum") {
        std::mt19937_64 rng(16);
        const auto params = default_params();
        const auto cfg = SolverConfig::defaults_for(params);
        for (int t = 0; t < 10; ++t) {
            const auto angles = random_angles(rng, 3, 3);
            PositionSubproblem sub;
            sub.side = Side::receive;
            sub.half_width = 2.25;
            sub.coefficients = random_psd(rng, 3, 3);
            sub.current_position = random_point(rng, 2.25);
            const double got = position_objective(sub, solve_position_step(sub, angles, params, cfg), angles, params);
            double grid = -std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 200; ++i)
                for (int j = 0; j <= 200; ++j)
                    grid = std::max(grid, position_objective(sub, Point(-2.25 + 4.5 * i / 200, -2.25 + 4.5 * j / 200), angles, params));
            CHECK(got >= grid - 1e-3 * std::abs(grid));
        }
    }
}

TEST_SUITE("alternating optimization") {
    TEST_CASE("infinite threshold stops after one pass") {
        std::mt19937_64 rng(17);
        const auto params = default_params();
        auto cfg = SolverConfig::defaults_for(params);
        cfg.epsilon = std::numeric_limits<double>::infinity();
        const auto trace = alternate_optimize(initial_layout(4, 4, 2.25, 2.25, 0.75, params), random_angles(rng, 3, 3), params, cfg);
        CHECK(trace.objective_per_outer_iter.size() == 2);
        CHECK(trace.outer_iters_used == 1);
        CHECK(trace.converged);
    }

    TEST_CASE("single antenna and single path") {
        std::mt19937_64 rng(18);
        const auto params = SystemParams::from_snr(15.0, 10.0, 1, 1, 1.5, 1.0);
        PathAngles angles;
        angles.tx_elevation = {0.3};
        angles.tx_azimuth = {1.2};
        angles.rx_elevation = {2.0};
        angles.rx_azimuth = {0.4};
        AntennaLayout l;
        l.tx = {Point(0.4, -0.2)};
        l.rx = {Point(-1.0, 0.5)};
        l.tx_half_width = l.rx_half_width = 2.25;
        const auto trace = alternate_optimize(l, angles, params, SolverConfig::defaults_for(params));
        const double expected = std::log2(1.0 + params.path_gain_variance / params.noise_power * params.power_budget);
        CHECK(trace.outer_iters_used == 1);
        CHECK(trace.converged);
        for (double v : trace.objective_per_outer_iter) CHECK(v == doctest::Approx(expected).epsilon(1e-12));
    }

    TEST_CASE("traces are monotone and layouts stay feasible") {
        const auto params = default_params();
        const auto cfg = SolverConfig::defaults_for(params);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto angles = draw_angles(params, seed);
            const auto trace = alternate_optimize(initial_layout(4, 4, 2.25, 2.25, 0.75, params), angles, params, cfg);
            CHECK(trace.max_decrease() <= 1e-9);
            CHECK(is_feasible(trace.final_layout));
            CHECK(trace.final_q.satisfies(params.power_budget));
            CHECK(std::abs(trace.final_q.trace() - params.power_budget) <= 1e-9 * params.power_budget);
            CHECK(trace.final_objective() ==
                  doctest::Approx(upper_bound_rate(trace.final_layout, angles, trace.final_q, params)).epsilon(1e-12));
        }
    }

    TEST_CASE("receive step never lowers the full objective") {
        std::mt19937_64 rng(19);
        const auto params = default_params();
        const auto cfg = SolverConfig::defaults_for(params);
        for (int t = 0; t < 20; ++t) {
            const auto angles = random_angles(rng, 3, 3);
            AntennaLayout l = initial_layout(4, 4, 2.25, 2.25, 0.75, params);
            auto fm = field_matrices(l, angles, params);
            const auto q = update_covariance(fm.tx, params.power_budget);
            const double before = upper_bound_rate(fm.tx, fm.rx, q.matrix(), params);
            const Eigen::Index m = t % 4;
            PositionSubproblem sub;
            sub.side = Side::receive;
            sub.half_width = 2.25;
            sub.min_spacing = 0.75;
            sub.coefficients = receive_coefficient_matrix(fm.rx, m, effective_gain(fm.tx, q.matrix(), params));
            sub.current_position = l.rx[static_cast<std::size_t>(m)];
            for (std::size_t k = 0; k < 4; ++k)
                if (static_cast<Eigen::Index>(k) != m) sub.fixed_positions.push_back(l.rx[k]);
            fm.rx.col(m) = rx_field_vector(solve_position_step(sub, angles, params, cfg), angles, params);
            CHECK(upper_bound_rate(fm.tx, fm.rx, q.matrix(), params) >= before - 1e-9);
        }
    }

    TEST_CASE("infeasible initial layout is rejected") {
        const auto params = default_params();
        AntennaLayout l = initial_layout(2, 2, 2.25, 2.25, 0.75, params);
        l.tx[1] = l.tx[0];
        CHECK_THROWS_AS(alternate_optimize(l, draw_angles(params, 1), params, SolverConfig{}), std::invalid_argument);
    }

    TEST_CASE("solver configuration validation") {
        SolverConfig c;
        CHECK_NOTHROW(c.validate());
        c.curvature_safety = 0.5;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c = SolverConfig{};
        c.epsilon = 0.0;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c = SolverConfig{};
        c.max_inner_iters = 0;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c = SolverConfig{};
        c.search_grid = 1;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    }
}

TEST_SUITE("layouts") {
    TEST_CASE("uniform linear array coordinates") {
        const auto ula = uniform_linear_array(4, 0.75, 2.25);
        const double xs[] = {-1.125, -0.375, 0.375, 1.125};
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(ula[i].x() == doctest::Approx(xs[i]).epsilon(1e-15));
            CHECK(ula[i].y() == 0.0);
        }
        for (std::size_t i = 1; i < 4; ++i) CHECK((ula[i] - ula[i - 1]).norm() == doctest::Approx(0.75).epsilon(1e-15));
        const auto one = uniform_linear_array(1, 0.75, 0.0);
        CHECK(one[0].norm() == 0.0);
        CHECK_THROWS_AS(uniform_linear_array(4, 0.75, 1.0), std::invalid_argument);
    }

    TEST_CASE("centered grid fallback") {
        const auto pts = centered_array(4, 0.75, 0.5);
        REQUIRE(pts.size() == 4);
        CHECK(min_pairwise_distance(pts) >= 0.75 - 1e-12);
        for (const auto& p : pts) CHECK(in_region(p, 0.5));
    }
}
