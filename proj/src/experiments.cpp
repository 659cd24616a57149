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

#include "fluid_mimo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "fluid_mimo/channel.hpp"

namespace fluid_mimo {

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::convergence:
            return "convergence";
        case ExperimentKind::snr_sweep:
            return "snr";
        case ExperimentKind::region_sweep:
            return "region";
    }
    return "?";
}

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(key.empty() ? message : "'" + key + "': " + message), key_(std::move(key)) {}

// ---- experiment settings ---------------------------------------------------

SystemParams ExperimentSpec::params_at_snr(double snr) const {
    return SystemParams::from_snr(noise_dbm, snr, num_tx_paths, num_rx_paths, wavelength, alpha2());
}

SolverConfig ExperimentSpec::solver() const {
    SolverConfig c;
    c.epsilon = epsilon;
    c.max_outer_iters = max_outer_iters;
    c.max_inner_iters = max_inner_iters;
    c.inner_tolerance = inner_tolerance_wavelengths * wavelength;
    c.curvature_safety = curvature_safety;
    c.search_grid = search_grid;
    c.search_starts = search_starts;
    return c;
}

ArrayGeometry ExperimentSpec::geometry(double a_over_lambda) const {
    const double half = 0.5 * a_over_lambda * wavelength;
    return {num_tx, num_rx, half, half, spacing_wavelengths * wavelength};
}

PathAngles ExperimentSpec::trial_angles(std::uint64_t trial_seed) const {
    if (angles) return *angles;
    SystemParams p;
    p.num_tx_paths = num_tx_paths;
    p.num_rx_paths = num_rx_paths;
    return draw_angles(p, trial_seed);
}

void ExperimentSpec::validate() const {
    auto require = [](bool ok, const char* key, const char* what) {
        if (!ok) throw ConfigError(key, what);
    };
    require(num_tx >= 1, "N", "must be >= 1");
    require(num_rx >= 1, "M", "must be >= 1");
    require(num_tx_paths >= 1, "L_t", "must be >= 1");
    require(num_rx_paths >= 1, "L_r", "must be >= 1");
    require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength", "must be positive");
    require(std::isfinite(region_wavelengths) && region_wavelengths > 0.0, "A", "must be positive");
    require(std::isfinite(spacing_wavelengths) && spacing_wavelengths >= 0.0, "D", "must be non-negative");
    require(std::isfinite(noise_dbm), "noise_dbm", "must be finite");
    require(!path_gain_variance || (std::isfinite(*path_gain_variance) && *path_gain_variance > 0.0), "alpha2",
            "must be positive");
    require(!snr_db.empty(), "snr_db", "grid must not be empty");
    require(!p_max_dbm.empty(), "p_max_dbm", "grid must not be empty");
    require(!a_grid.empty(), "a_grid", "grid must not be empty");
    require(std::isfinite(region_snr_db), "region_snr_db", "must be finite");
    for (double v : snr_db) require(std::isfinite(v), "snr_db", "values must be finite");
    for (double v : p_max_dbm) require(std::isfinite(v), "p_max_dbm", "values must be finite");
    for (double v : a_grid) require(std::isfinite(v) && v > 0.0, "a_grid", "values must be positive");
    require(!designs.empty(), "designs", "must name at least one design");
    for (std::size_t i = 0; i < designs.size(); ++i)
        for (std::size_t j = i + 1; j < designs.size(); ++j)
            require(designs[i] != designs[j], "designs", "lists a design twice");
    require(trials >= 1, "trials", "must be >= 1");
    require(mc_samples >= 1, "mc_samples", "must be >= 1");
    require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon", "must be positive");
    require(max_outer_iters >= 1, "max_outer_iters", "must be >= 1");
    require(max_inner_iters >= 1, "max_inner_iters", "must be >= 1");
    require(std::isfinite(inner_tolerance_wavelengths) && inner_tolerance_wavelengths >= 0.0, "inner_tolerance",
            "must be non-negative");
    require(std::isfinite(curvature_safety) && curvature_safety >= 1.0, "curvature_safety", "must be >= 1");
    require(search_grid == 0 || search_grid >= 2, "search_grid", "must be 0 or >= 2");
    require(search_starts >= 1, "search_starts", "must be >= 1");

    // Every design starts from (or stays at) a ULA, which has to fit the region.
    const double pitch = std::max(0.5, spacing_wavelengths);
    const int longest = std::max(num_tx, num_rx);
    auto fits = [&](double a) { return (longest - 1) * pitch <= a * (1.0 + 1e-12); };
    require(fits(region_wavelengths), "A", "region too small for a uniform linear array of the configured antennas");
    for (double a : a_grid)
        require(fits(a), "a_grid", "region too small for a uniform linear array of the configured antennas");

    if (angles) {
        SystemParams p;
        p.num_tx_paths = num_tx_paths;
        p.num_rx_paths = num_rx_paths;
        try {
            angles->validate(p);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("tx_elevation", e.what());
        }
    }
}

// ---- config parsing ----------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(std::string(key), "expected an integer, got '" + std::string(text) + "'");
    return v;
}

int parse_int(std::string_view key, std::string_view text) {
    const long long v = parse_integer(key, text);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError(std::string(key), "integer out of range");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(std::string(key), "expected an unsigned integer, got '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ConfigError(std::string(key), "empty list");
    const auto range = split(text, ':');
    if (range.size() == 3) {
        const double start = parse_double(key, range[0]);
        const double step = parse_double(key, range[1]);
        const double stop = parse_double(key, range[2]);
        if (!(step > 0.0) || stop < start) throw ConfigError(std::string(key), "range needs step > 0 and stop >= start");
        const double count = (stop - start) / step;
        const auto n = static_cast<long long>(std::llround(count));
        if (std::abs(count - static_cast<double>(n)) > 1e-9 * std::max(1.0, count))
            throw ConfigError(std::string(key), "range stop is not start + k * step");
        if (n > 100000) throw ConfigError(std::string(key), "range has too many points");
        std::vector<double> v;
        for (long long i = 0; i <= n; ++i) v.push_back(start + static_cast<double>(i) * step);
        return v;
    }
    if (range.size() != 1) throw ConfigError(std::string(key), "range must be start:step:stop");
    std::vector<double> v;
    for (auto part : split(text, ',')) v.push_back(parse_double(key, part));
    return v;
}

using Setter = std::function<void(ExperimentSpec&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        auto integer = [](int ExperimentSpec::*field) {
            return [field](ExperimentSpec& s, std::string_view k, std::string_view v) { s.*field = parse_int(k, v); };
        };
        auto number = [](double ExperimentSpec::*field) {
            return
                [field](ExperimentSpec& s, std::string_view k, std::string_view v) { s.*field = parse_double(k, v); };
        };
        auto list = [](std::vector<double> ExperimentSpec::*field) {
            return [field](ExperimentSpec& s, std::string_view k, std::string_view v) { s.*field = parse_list(k, v); };
        };
        auto angle = [](std::vector<double> PathAngles::*field) {
            return [field](ExperimentSpec& s, std::string_view k, std::string_view v) {
                if (!s.angles) s.angles = PathAngles{};
                (*s.angles).*field = parse_list(k, v);
            };
        };
        t["N"] = integer(&ExperimentSpec::num_tx);
        t["M"] = integer(&ExperimentSpec::num_rx);
        t["L_t"] = integer(&ExperimentSpec::num_tx_paths);
        t["L_r"] = integer(&ExperimentSpec::num_rx_paths);
        t["wavelength"] = number(&ExperimentSpec::wavelength);
        t["A"] = number(&ExperimentSpec::region_wavelengths);
        t["D"] = number(&ExperimentSpec::spacing_wavelengths);
        t["noise_dbm"] = number(&ExperimentSpec::noise_dbm);
        t["alpha2"] = [](ExperimentSpec& s, std::string_view k, std::string_view v) {
            s.path_gain_variance = parse_double(k, v);
        };
        t["snr_db"] = list(&ExperimentSpec::snr_db);
        t["p_max_dbm"] = list(&ExperimentSpec::p_max_dbm);
        t["region_snr_db"] = number(&ExperimentSpec::region_snr_db);
        t["a_grid"] = list(&ExperimentSpec::a_grid);
        t["designs"] = [](ExperimentSpec& s, std::string_view k, std::string_view v) {
            s.designs.clear();
            for (auto name : split(v, ',')) {
                const auto kind = parse_baseline_kind(name);
                if (!kind) throw ConfigError(std::string(k), "unknown design '" + std::string(name) + "'");
                s.designs.push_back(*kind);
            }
        };
        t["trials"] = integer(&ExperimentSpec::trials);
        t["seed"] = [](ExperimentSpec& s, std::string_view k, std::string_view v) { s.seed = parse_u64(k, v); };
        t["mc_samples"] = integer(&ExperimentSpec::mc_samples);
        t["epsilon"] = number(&ExperimentSpec::epsilon);
        t["max_outer_iters"] = integer(&ExperimentSpec::max_outer_iters);
        t["max_inner_iters"] = integer(&ExperimentSpec::max_inner_iters);
        t["inner_tolerance"] = number(&ExperimentSpec::inner_tolerance_wavelengths);
        t["curvature_safety"] = number(&ExperimentSpec::curvature_safety);
        t["search_grid"] = integer(&ExperimentSpec::search_grid);
        t["search_starts"] = integer(&ExperimentSpec::search_starts);
        t["tx_elevation"] = angle(&PathAngles::tx_elevation);
        t["tx_azimuth"] = angle(&PathAngles::tx_azimuth);
        t["rx_elevation"] = angle(&PathAngles::rx_elevation);
        t["rx_azimuth"] = angle(&PathAngles::rx_azimuth);
        return t;
    }();
    return table;
}

}  // namespace

ExperimentSpec parse_config_text(std::string_view text) {
    ExperimentSpec spec;
    std::map<std::string, int, std::less<>> seen;
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(std::string(key), "unknown key");
        if (auto [pos, fresh] = seen.emplace(std::string(key), line_no); !fresh)
            throw ConfigError(std::string(key), "given twice (lines " + std::to_string(pos->second) + " and " +
                                                    std::to_string(line_no) + ")");
        it->second(spec, key, value);
    }
    if (spec.angles) {
        for (const char* k : {"tx_elevation", "tx_azimuth", "rx_elevation", "rx_azimuth"})
            if (!seen.count(k)) throw ConfigError(k, "fixed angles need all four angle lists");
    }
    spec.validate();
    return spec;
}

ExperimentSpec parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

// ---- worker pool ---------------------------------------------------------------

int resolve_jobs(int requested) {
    int jobs = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("FLUID_MIMO_MAX_JOBS")) {
        const std::string_view v = trim(env);
        int cap = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), cap);
        if (ec == std::errc() && ptr == v.data() + v.size() && cap > 0) jobs = std::min(jobs, cap);
    }
    return std::max(1, jobs);
}

namespace {

// Runs task(i) for i in [0, n) on up to `jobs` threads. The first failure by index is rethrown.
template <class Task>
void parallel_for(std::size_t n, int jobs, Task task) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto threads = static_cast<std::size_t>(std::max(1, jobs));
    if (threads == 1 || n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(threads, n); ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string describe(std::string_view what, std::uint64_t seed, std::string_view detail) {
    return std::string(what) + " seed " + std::to_string(seed) + ": " + std::string(detail);
}

void check_trace(const SolveTrace& trace, const SolverConfig& config, std::string_view what, std::uint64_t seed,
                 std::vector<std::string>& violations) {
    for (double v : trace.objective_per_outer_iter)
        if (!std::isfinite(v)) violations.push_back(describe(what, seed, "non-finite objective"));
    if (trace.max_decrease() > 1e-9) violations.push_back(describe(what, seed, "objective decreased"));
    if (!trace.converged && trace.outer_iters_used != config.max_outer_iters)
        violations.push_back(describe(what, seed, "stopped before convergence or the iteration cap"));
    if (!is_feasible(trace.final_layout)) violations.push_back(describe(what, seed, "infeasible final layout"));
}

struct SweepPoint {
    double snr_db;
    double a_over_lambda;
};

SweepResult run_sweep(const ExperimentSpec& spec, const std::vector<SweepPoint>& points, int jobs) {
    spec.validate();
    const auto designs = spec.designs.size();
    const auto trials = static_cast<std::size_t>(spec.trials);
    const std::size_t total = points.size() * designs * trials;
    const SolverConfig solver = spec.solver();

    SweepResult result;
    result.rows.resize(total);
    std::vector<std::vector<std::string>> violations(total);

    // Row order: point, then design, then trial.
    parallel_for(total, jobs, [&](std::size_t i) {
        const auto& point = points[i / (designs * trials)];
        const BaselineKind kind = spec.designs[(i / trials) % designs];
        const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(i % trials);
        const SystemParams params = spec.params_at_snr(point.snr_db);
        const PathAngles angles = spec.trial_angles(seed);
        const DesignResult r =
            evaluate_design(kind, spec.geometry(point.a_over_lambda), angles, params, solver, spec.mc_samples, seed);

        RateRow& row = result.rows[i];
        row.design = kind;
        row.snr_db = point.snr_db;
        row.a_over_lambda = point.a_over_lambda;
        row.seed = seed;
        row.mean_rate = r.rate.mean_rate;
        row.std_error = r.rate.std_error;
        row.upper_bound = r.upper_bound;
        row.outer_iters = r.trace.outer_iters_used;

        std::ostringstream what;
        what << to_string(kind) << " snr " << point.snr_db << " dB A " << point.a_over_lambda;
        check_trace(r.trace, solver_config_for(kind, solver), what.str(), seed, violations[i]);
        if (!r.trace.final_q.satisfies(params.power_budget))
            violations[i].push_back(describe(what.str(), seed, "covariance violates its constraints"));
        if (!std::isfinite(row.mean_rate) || !std::isfinite(row.std_error))
            violations[i].push_back(describe(what.str(), seed, "non-finite rate estimate"));
        if (row.mean_rate > row.upper_bound + 3.0 * row.std_error)
            violations[i].push_back(describe(what.str(), seed, "Monte Carlo rate exceeds the upper bound"));
    });

    for (auto& v : violations) result.violations.insert(result.violations.end(), v.begin(), v.end());
    result.summary = summarize(result.rows);
    return result;
}

}  // namespace

ConvergenceResult run_convergence(const ExperimentSpec& spec, int jobs) {
    spec.validate();
    const auto trials = static_cast<std::size_t>(spec.trials);
    const std::size_t total = spec.p_max_dbm.size() * trials;
    const SolverConfig solver = spec.solver();

    std::vector<SolveTrace> traces(total);
    std::vector<std::vector<std::string>> violations(total);
    parallel_for(total, jobs, [&](std::size_t i) {
        const double p_max = spec.p_max_dbm[i / trials];
        const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(i % trials);
        const SystemParams params = spec.params_at_snr(p_max - spec.noise_dbm);
        const ArrayGeometry g = spec.geometry(spec.region_wavelengths);
        const AntennaLayout start = build_baseline_layout(BaselineKind::fa, g, params);
        traces[i] = alternate_optimize(start, spec.trial_angles(seed), params, solver);
        std::ostringstream what;
        what << "P_max " << p_max << " dBm";
        check_trace(traces[i], solver, what.str(), seed, violations[i]);
    });

    ConvergenceResult result;
    for (std::size_t p = 0; p < spec.p_max_dbm.size(); ++p) {
        ConvergenceSummary s;
        s.p_max_dbm = spec.p_max_dbm[p];
        for (std::size_t k = 0; k < trials; ++k) {
            const std::size_t i = p * trials + k;
            const auto& trace = traces[i];
            const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(k);
            for (std::size_t it = 0; it < trace.objective_per_outer_iter.size(); ++it)
                result.rows.push_back({s.p_max_dbm, seed, static_cast<int>(it), trace.objective_per_outer_iter[it]});
            ++s.runs;
            s.converged += trace.converged ? 1 : 0;
            s.mean_outer_iters += trace.outer_iters_used;
            s.max_outer_iters = std::max(s.max_outer_iters, trace.outer_iters_used);
            s.mean_final_objective += trace.final_objective();
            result.violations.insert(result.violations.end(), violations[i].begin(), violations[i].end());
        }
        s.mean_outer_iters /= s.runs;
        s.mean_final_objective /= s.runs;
        result.summary.push_back(s);
    }
    return result;
}

SweepResult run_snr_sweep(const ExperimentSpec& spec, int jobs) {
    std::vector<SweepPoint> points;
    for (double snr : spec.snr_db) points.push_back({snr, spec.region_wavelengths});
    return run_sweep(spec, points, jobs);
}

SweepResult run_region_sweep(const ExperimentSpec& spec, int jobs) {
    std::vector<SweepPoint> points;
    for (double a : spec.a_grid) points.push_back({spec.region_snr_db, a});
    return run_sweep(spec, points, jobs);
}

std::vector<RateSummary> summarize(const std::vector<RateRow>& rows) {
    std::vector<RateSummary> out;
    std::vector<std::vector<double>> rates;
    for (const auto& r : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const RateSummary& s) {
            return s.design == r.design && s.snr_db == r.snr_db && s.a_over_lambda == r.a_over_lambda;
        });
        if (it == out.end()) {
            out.push_back({r.design, r.snr_db, r.a_over_lambda, 0, 0.0, 0.0, 0.0});
            rates.emplace_back();
            it = std::prev(out.end());
        }
        const auto idx = static_cast<std::size_t>(it - out.begin());
        ++it->trials;
        it->mean_rate += r.mean_rate;
        it->mean_upper_bound += r.upper_bound;
        rates[idx].push_back(r.mean_rate);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& s = out[i];
        s.mean_rate /= s.trials;
        s.mean_upper_bound /= s.trials;
        if (s.trials > 1) {
            double ss = 0.0;
            for (double v : rates[i]) ss += (v - s.mean_rate) * (v - s.mean_rate);
            s.std_error = std::sqrt(ss / (s.trials - 1) / s.trials);
        }
    }
    return out;
}

// ---- CSV ---------------------------------------------------------------------------

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << kConvergenceHeader << '\n';
    for (const auto& r : rows)
        out << num(r.p_max_dbm) << ',' << r.seed << ',' << r.iteration << ',' << num(r.objective) << '\n';
}

void write_csv(std::ostream& out, const std::vector<RateRow>& rows) {
    out << kRateHeader << '\n';
    for (const auto& r : rows)
        out << to_string(r.design) << ',' << num(r.snr_db) << ',' << num(r.a_over_lambda) << ',' << r.seed << ','
            << num(r.mean_rate) << ',' << num(r.std_error) << ',' << num(r.upper_bound) << '\n';
}

void write_csv(std::ostream& out, const std::vector<RateSummary>& rows) {
    out << kRateSummaryHeader << '\n';
    for (const auto& r : rows)
        out << to_string(r.design) << ',' << num(r.snr_db) << ',' << num(r.a_over_lambda) << ',' << r.trials << ','
            << num(r.mean_rate) << ',' << num(r.std_error) << ',' << num(r.mean_upper_bound) << '\n';
}

void write_csv(std::ostream& out, const std::vector<ConvergenceSummary>& rows) {
    out << kConvergenceSummaryHeader << '\n';
    for (const auto& r : rows)
        out << num(r.p_max_dbm) << ',' << r.runs << ',' << r.converged << ',' << num(r.mean_outer_iters) << ','
            << r.max_outer_iters << ',' << num(r.mean_final_objective) << '\n';
}

}  // namespace fluid_mimo
