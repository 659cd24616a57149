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

#include "fluid_mimo/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fluid_mimo/channel.hpp"

namespace fluid_mimo {

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream, std::uint64_t block) {
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    const auto st = static_cast<std::uint64_t>(stream);
    std::seed_seq seq{lo(seed), hi(seed), lo(st), hi(st), lo(block), hi(block)};
    return std::mt19937_64(seq);
}

PathAngles draw_angles(const SystemParams& params, std::uint64_t seed) {
    auto rng = make_engine(seed, Stream::angles);
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
    auto draw = [&](int n) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& a : v) a = u(rng);
        return v;
    };
    PathAngles a;
    a.tx_elevation = draw(params.num_tx_paths);
    a.tx_azimuth = draw(params.num_tx_paths);
    a.rx_elevation = draw(params.num_rx_paths);
    a.rx_azimuth = draw(params.num_rx_paths);
    return a;
}

PathResponseMatrix sample_path_matrix(const SystemParams& params, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(params.path_gain_variance / 2.0));
    PathResponseMatrix s{CMatrix(params.num_rx_paths, params.num_tx_paths)};
    for (Eigen::Index q = 0; q < s.entries.rows(); ++q) {
        for (Eigen::Index p = 0; p < s.entries.cols(); ++p) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            s.entries(q, p) = cdouble(re, im);
        }
    }
    return s;
}

ErgodicRateEstimate ergodic_rate_mc(const AntennaLayout& layout, const PathAngles& angles, const TransmitCovariance& q,
                                    const SystemParams& params, int num_samples, std::uint64_t seed,
                                    kernels::Isa isa) {
    if (num_samples < 1) throw std::invalid_argument("ergodic_rate_mc: num_samples must be >= 1");
    if (!q.satisfies(params.power_budget))
        throw std::invalid_argument("ergodic_rate_mc: covariance violates the Hermitian/PSD/power constraints");

    const auto fm = field_matrices(layout, angles, params);
    if (q.size() != fm.tx.cols()) throw std::invalid_argument("ergodic_rate_mc: covariance size mismatch");
    const CMatrix rx_adj = fm.rx.adjoint();                          // M x L_r
    const CMatrix shaped = fm.tx * q.matrix() * fm.tx.adjoint();     // L_t x L_t
    const int m = static_cast<int>(rx_adj.rows());
    const int lr = params.num_rx_paths;
    const int lt = params.num_tx_paths;
    const double inv_noise = 1.0 / params.noise_power;

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(num_samples));
    std::vector<double> block_out;

    const auto total = static_cast<std::size_t>(num_samples);
    for (std::size_t start = 0, block = 0; start < total; start += kMonteCarloBlock, ++block) {
        const std::size_t count = std::min(kMonteCarloBlock, total - start);
        auto rng = make_engine(seed, Stream::path_gains, block);
        kernels::ComplexBatch sigma(lr, lt, count);
        for (std::size_t s = 0; s < count; ++s) sigma.set_matrix(s, sample_path_matrix(params, rng).entries);

        kernels::ComplexBatch k(m, lt, count);
        kernels::multiply_left(isa, rx_adj, sigma, k);
        kernels::ComplexBatch w(m, m, count);
        kernels::hermitian_sandwich(isa, k, shaped, w);
        block_out.assign(w.stride(), 0.0);
        kernels::log2det_identity_plus(isa, w, inv_noise, block_out);
        for (std::size_t s = 0; s < count; ++s) {
            if (!std::isfinite(block_out[s]))
                throw std::runtime_error("ergodic_rate_mc: non-finite sample rate (factorization failed)");
            values.push_back(block_out[s]);
        }
    }

    ErgodicRateEstimate est;
    est.num_samples = num_samples;
    est.seed = seed;
    double sum = 0.0;
    for (double v : values) sum += v;
    est.mean_rate = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - est.mean_rate) * (v - est.mean_rate);
        const double var = ss / static_cast<double>(values.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return est;
}

std::string_view to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::fa:
            return "FA";
        case BaselineKind::rfa:
            return "RFA";
        case BaselineKind::fpa:
            return "FPA";
    }
    return "?";
}

std::optional<BaselineKind> parse_baseline_kind(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    if (upper == "FA") return BaselineKind::fa;
    if (upper == "RFA") return BaselineKind::rfa;
    if (upper == "FPA") return BaselineKind::fpa;
    return std::nullopt;
}

AntennaLayout build_baseline_layout(BaselineKind kind, const ArrayGeometry& geometry, const SystemParams& params) {
    AntennaLayout layout = initial_layout(geometry.num_tx, geometry.num_rx, geometry.tx_half_width,
                                          geometry.rx_half_width, geometry.min_spacing, params);
    const double spacing = std::max(0.5 * params.wavelength, geometry.min_spacing);
    if (kind == BaselineKind::rfa || kind == BaselineKind::fpa)
        layout.tx = uniform_linear_array(geometry.num_tx, spacing, geometry.tx_half_width);
    if (kind == BaselineKind::fpa) layout.rx = uniform_linear_array(geometry.num_rx, spacing, geometry.rx_half_width);
    return layout;
}

SolverConfig solver_config_for(BaselineKind kind, SolverConfig base) {
    base.update_rx_positions = kind != BaselineKind::fpa;
    base.update_tx_positions = kind == BaselineKind::fa;
    return base;
}

DesignResult evaluate_design(BaselineKind kind, const ArrayGeometry& geometry, const PathAngles& angles,
                             const SystemParams& params, const SolverConfig& solver, int mc_samples,
                             std::uint64_t mc_seed) {
    DesignResult r;
    r.kind = kind;
    const AntennaLayout start = build_baseline_layout(kind, geometry, params);
    r.trace = alternate_optimize(start, angles, params, solver_config_for(kind, solver));
    r.upper_bound = r.trace.final_objective();
    r.rate = ergodic_rate_mc(r.trace.final_layout, angles, r.trace.final_q, params, mc_samples, mc_seed);
    return r;
}

double relative_gain(double rate, double baseline_rate) {
    if (!(baseline_rate > 0.0)) throw std::invalid_argument("relative_gain: baseline rate must be positive");
    return 100.0 * (rate - baseline_rate) / baseline_rate;
}

}  // namespace fluid_mimo
