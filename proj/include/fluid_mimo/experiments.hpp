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

// Seeded experiment drivers: convergence traces, rate versus SNR and rate versus
// region size. Trials run on a worker pool; results are collected by index, so the
// output never depends on the number of workers.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fluid_mimo/evaluation.hpp"
#include "fluid_mimo/optimizer.hpp"
#include "fluid_mimo/types.hpp"

namespace fluid_mimo {

enum class ExperimentKind { convergence, snr_sweep, region_sweep };

std::string_view to_string(ExperimentKind kind);

// Configuration problem tied to one key (or to the file itself when key is empty).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct ExperimentSpec {
    int num_tx = 4;
    int num_rx = 4;
    int num_tx_paths = 3;
    int num_rx_paths = 3;
    double wavelength = 1.5;           // meters
    double region_wavelengths = 3.0;   // A / lambda for the convergence and SNR experiments
    double spacing_wavelengths = 0.5;  // D / lambda
    double noise_dbm = 15.0;
    std::optional<double> path_gain_variance;  // 1 / L_r when unset

    std::vector<double> snr_db = {0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0};
    std::vector<double> p_max_dbm = {20.0, 25.0, 30.0};
    double region_snr_db = 10.0;
    std::vector<double> a_grid = {1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0, 3.25, 3.5};
    std::vector<BaselineKind> designs = {BaselineKind::fa, BaselineKind::rfa, BaselineKind::fpa};

    int trials = 100;
    std::uint64_t seed = 1;
    int mc_samples = 10000;

    // Solver settings; inner_tolerance here is in wavelengths.
    double epsilon = 1e-3;
    int max_outer_iters = 100;
    int max_inner_iters = 100;
    double inner_tolerance_wavelengths = 1e-6;
    double curvature_safety = 1.0;
    int search_grid = 33;
    int search_starts = 4;

    // Fixed angles for every trial instead of random draws.
    std::optional<PathAngles> angles;

    double alpha2() const { return path_gain_variance.value_or(1.0 / num_rx_paths); }
    SystemParams params_at_snr(double snr_db) const;
    SolverConfig solver() const;
    ArrayGeometry geometry(double a_over_lambda) const;
    PathAngles trial_angles(std::uint64_t trial_seed) const;

    // Throws ConfigError naming the offending key.
    void validate() const;
};

// Parses "key = value" lines; '#' starts a comment. Lists are comma separated or
// "start:step:stop" ranges. Unknown keys, malformed values and violated invariants
// throw ConfigError. An empty text yields the default spec.
ExperimentSpec parse_config_text(std::string_view text);
ExperimentSpec parse_config(const std::filesystem::path& path);

struct ConvergenceRow {
    double p_max_dbm = 0.0;
    std::uint64_t seed = 0;
    int iteration = 0;
    double objective = 0.0;
};

struct RateRow {
    BaselineKind design = BaselineKind::fa;
    double snr_db = 0.0;
    double a_over_lambda = 0.0;
    std::uint64_t seed = 0;
    double mean_rate = 0.0;
    double std_error = 0.0;
    double upper_bound = 0.0;
    int outer_iters = 0;
};

// Trial average for one (design, SNR, A) point.
struct RateSummary {
    BaselineKind design = BaselineKind::fa;
    double snr_db = 0.0;
    double a_over_lambda = 0.0;
    int trials = 0;
    double mean_rate = 0.0;
    double std_error = 0.0;  // of the trial mean
    double mean_upper_bound = 0.0;
};

struct ConvergenceSummary {
    double p_max_dbm = 0.0;
    int runs = 0;
    int converged = 0;
    double mean_outer_iters = 0.0;
    int max_outer_iters = 0;
    double mean_final_objective = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    std::vector<ConvergenceSummary> summary;
    std::vector<std::string> violations;
};

struct SweepResult {
    std::vector<RateRow> rows;
    std::vector<RateSummary> summary;
    std::vector<std::string> violations;
};

// Worker count: `requested` (0 = hardware concurrency), capped by FLUID_MIMO_MAX_JOBS when set.
int resolve_jobs(int requested);

ConvergenceResult run_convergence(const ExperimentSpec& spec, int jobs = 1);
SweepResult run_snr_sweep(const ExperimentSpec& spec, int jobs = 1);
SweepResult run_region_sweep(const ExperimentSpec& spec, int jobs = 1);

std::vector<RateSummary> summarize(const std::vector<RateRow>& rows);

inline constexpr std::string_view kConvergenceHeader = "p_max_dbm,seed,iteration,objective";
inline constexpr std::string_view kRateHeader = "design,snr_db,a_over_lambda,seed,mean_rate,std_error,upper_bound";
inline constexpr std::string_view kRateSummaryHeader =
    "design,snr_db,a_over_lambda,trials,mean_rate,std_error,mean_upper_bound";
inline constexpr std::string_view kConvergenceSummaryHeader =
    "p_max_dbm,runs,converged,mean_outer_iters,max_outer_iters,mean_final_objective";

void write_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
void write_csv(std::ostream& out, const std::vector<RateRow>& rows);
void write_csv(std::ostream& out, const std::vector<RateSummary>& rows);
void write_csv(std::ostream& out, const std::vector<ConvergenceSummary>& rows);

}  // namespace fluid_mimo
