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

// fluid-mimo <convergence|snr|region> --config <path> --out <csv>
//            [--summary <csv>] [--seed <u64>] [--trials <n>] [--jobs <n>]
//
// Exit status: 0 success, 1 usage or configuration error, 2 a run violated one of
// its invariants (CSV still written), 3 runtime failure.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fluid_mimo/experiments.hpp"

namespace fs = std::filesystem;
using namespace fluid_mimo;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitRuntime = 3;

// Write through a sibling temporary file so readers never see a partial CSV.
void write_atomically(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

template <class Rows>
std::string to_csv(const Rows& rows) {
    std::ostringstream os;
    write_csv(os, rows);
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate maximization experiments for fluid-antenna MIMO links"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string summary_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    int jobs = 0;

    std::vector<CLI::App*> commands;
    for (auto [name, help] : {std::pair{"convergence", "objective trace of every outer iteration"},
                              std::pair{"snr", "rate versus SNR for each design"},
                              std::pair{"region", "rate versus region size for each design"}}) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--config", config_path, "key = value configuration file")->required();
        cmd->add_option("--out", out_path, "per-run CSV output")->required();
        cmd->add_option("--summary", summary_path, "optional CSV of per-point averages");
        cmd->add_option("--seed", seed, "base seed (trial k uses seed + k)");
        cmd->add_option("--trials", trials, "number of random angle draws")->check(CLI::PositiveNumber);
        cmd->add_option("--jobs", jobs, "worker threads (0 = all cores; capped by FLUID_MIMO_MAX_JOBS)")
            ->check(CLI::NonNegativeNumber);
        commands.push_back(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    ExperimentSpec spec;
    try {
        spec = parse_config(config_path);
        if (seed) spec.seed = *seed;
        if (trials) spec.trials = *trials;
        spec.validate();
    } catch (const ConfigError& e) {
        std::cerr << "fluid-mimo: config error in " << config_path << ": " << e.what() << '\n';
        return kExitConfig;
    }

    const int workers = resolve_jobs(jobs);
    std::vector<std::string> violations;
    try {
        std::string csv;
        std::string summary;
        if (commands[0]->parsed()) {
            auto r = run_convergence(spec, workers);
            csv = to_csv(r.rows);
            summary = to_csv(r.summary);
            violations = std::move(r.violations);
        } else {
            auto r = commands[1]->parsed() ? run_snr_sweep(spec, workers) : run_region_sweep(spec, workers);
            csv = to_csv(r.rows);
            summary = to_csv(r.summary);
            violations = std::move(r.violations);
        }
        write_atomically(out_path, csv);
        if (!summary_path.empty()) write_atomically(summary_path, summary);
    } catch (const std::exception& e) {
        std::cerr << "fluid-mimo: " << e.what() << '\n';
        return kExitRuntime;
    }

    for (const auto& v : violations) std::cerr << "fluid-mimo: invariant violated: " << v << '\n';
    return violations.empty() ? 0 : kExitInvariant;
}
