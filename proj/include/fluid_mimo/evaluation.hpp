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

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "fluid_mimo/kernels.hpp"
#include "fluid_mimo/optimizer.hpp"
#include "fluid_mimo/types.hpp"

namespace fluid_mimo {

// Independent random streams derived from one seed.
enum class Stream : std::uint64_t { angles = 1, path_gains = 2 };

// Engine for (seed, stream, block). Different blocks of one stream never overlap,
// so a Monte Carlo run can be partitioned without changing its samples.
std::mt19937_64 make_engine(std::uint64_t seed, Stream stream, std::uint64_t block = 0);

// i.i.d. angles uniform on [0, pi] for every path, drawn from the angle stream of `seed`.
PathAngles draw_angles(const SystemParams& params, std::uint64_t seed);

// L_r x L_t i.i.d. CN(0, alpha^2) entries (real and imaginary parts each of variance alpha^2 / 2).
PathResponseMatrix sample_path_matrix(const SystemParams& params, std::mt19937_64& rng);

struct ErgodicRateEstimate {
    double mean_rate = 0.0;  // bits/s/Hz
    double std_error = 0.0;
    int num_samples = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kMonteCarloBlock = 1024;

// Sample mean and standard error of log2 det(I + H Q H^H / sigma^2) over independent
// path-gain draws. Deterministic in `seed`; sample s comes from block s / kMonteCarloBlock.
ErgodicRateEstimate ergodic_rate_mc(const AntennaLayout& layout, const PathAngles& angles, const TransmitCovariance& q,
                                    const SystemParams& params, int num_samples, std::uint64_t seed,
                                    kernels::Isa isa = kernels::preferred_isa());

enum class BaselineKind { fa, rfa, fpa };

std::string_view to_string(BaselineKind kind);
std::optional<BaselineKind> parse_baseline_kind(std::string_view name);

struct ArrayGeometry {
    int num_tx = 4;
    int num_rx = 4;
    double tx_half_width = 2.25;
    double rx_half_width = 2.25;
    double min_spacing = 0.75;
};

// FA: optimizer starting layout on both sides. RFA: transmit ULA, receive as FA.
// FPA: ULAs on both sides. ULA spacing is max(lambda / 2, min_spacing); a ULA that
// does not fit its region throws std::invalid_argument.
AntennaLayout build_baseline_layout(BaselineKind kind, const ArrayGeometry& geometry, const SystemParams& params);

// Restricts position updates to the sides the design may move.
SolverConfig solver_config_for(BaselineKind kind, SolverConfig base);

struct DesignResult {
    BaselineKind kind = BaselineKind::fa;
    SolveTrace trace;
    double upper_bound = 0.0;
    ErgodicRateEstimate rate;
};

// Optimizes one design and evaluates its Monte Carlo ergodic rate.
DesignResult evaluate_design(BaselineKind kind, const ArrayGeometry& geometry, const PathAngles& angles,
                             const SystemParams& params, const SolverConfig& solver, int mc_samples,
                             std::uint64_t mc_seed);

// 100 (a - b) / b. Throws std::invalid_argument for b <= 0.
double relative_gain(double rate, double baseline_rate);

}  // namespace fluid_mimo
