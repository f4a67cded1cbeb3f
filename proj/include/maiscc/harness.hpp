// SPDX-License-Identifier: Apache-2.0
//
// maiscc: movable-antenna multi-AAV sensing/communication/computation toolkit
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

#include "maiscc/geometry_channel.hpp"
#include "maiscc/inner_solver.hpp"
#include "maiscc/pso.hpp"
#include "maiscc/rng.hpp"
#include "maiscc/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace maiscc {

namespace defaults {

inline constexpr double kAavHeight = 50.0;
inline constexpr double kTargetOffset = 20.0;
inline constexpr double kMaxPower = 1.0;
inline constexpr std::size_t kAntennas = 4;

// Gamma_min such that d^2 Gamma_min = 0.25 P N at the default geometry
// (binding for poorly aligned arrays, feasible down to N = 1 at P = 1 W).
inline constexpr double kGammaMin =
    0.25 * kMaxPower * static_cast<double>(kAntennas) / (kAavHeight * kAavHeight + kTargetOffset * kTargetOffset);

// AAV ground positions inside the 600 m x 600 m area, BS at the origin.
// Scenarios with M AAVs use the first M entries.
inline constexpr std::array<std::array<double, 2>, 8> kAavGround{{
    {150.0, 150.0},
    {450.0, 150.0},
    {150.0, 450.0},
    {450.0, 450.0},
    {300.0, 300.0},
    {300.0, 100.0},
    {100.0, 300.0},
    {500.0, 300.0},
}};

} // namespace defaults

// Config-level description of a scenario. Empty position/task lists select
// the documented defaults; task sizes are drawn per instance.
struct ScenarioSettings {
    std::size_t num_aavs = 3;
    std::size_t antennas = defaults::kAntennas;
    double region_size = 20.0;
    double min_spacing = 0.5;
    double wavelength = 0.1;
    Vec3 bs_position{0.0, 0.0, 0.0};
    double aav_height = defaults::kAavHeight;
    double target_offset = defaults::kTargetOffset;
    std::vector<Vec3> aav_positions;
    std::vector<Vec3> target_positions;
    std::vector<double> task_bits;
    double task_bits_min = 1e7;
    double task_bits_max = 1.5e7;
    double max_power = defaults::kMaxPower;
    double gamma_min = defaults::kGammaMin;
    double bs_compute = 1e10;
    double cycles_per_bit = 100.0;
    double bandwidth = 3e6;
    double noise_power_dbm = -110.0;
    double reference_gain_db = -60.0;
    double rician_factor = 10.0;

    friend bool operator==(const ScenarioSettings&, const ScenarioSettings&) = default;
};

struct ScenarioInstance {
    ScenarioConfig config;
    NlosDraws nlos;
};

inline Vec3 default_aav_position(std::size_t m, double height) {
    if (m < defaults::kAavGround.size())
        return {defaults::kAavGround[m][0], defaults::kAavGround[m][1], height};
    const double angle = 2.0 * kPi * static_cast<double>(m) / 13.0;
    return {300.0 + 250.0 * std::cos(angle), 300.0 + 250.0 * std::sin(angle), height};
}

// Rows and columns of the row-major FPA grid for N antennas.
inline std::pair<std::size_t, std::size_t> grid_shape(std::size_t antennas) {
    const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(antennas)) - 1e-12));
    const std::size_t rows = (antennas + cols - 1) / cols;
    return {rows, cols};
}

inline ScenarioInstance build_scenario(std::uint64_t seed, const ScenarioSettings& s) {
    if (s.num_aavs < 1 || s.antennas < 1)
        throw DomainError("scenario: num_aavs and antennas must be at least 1");
    if (!(s.region_size > 0.0) || !(s.min_spacing > 0.0))
        throw DomainError("scenario: region_size and min_spacing must be positive");
    const auto [rows, cols] = grid_shape(s.antennas);
    if (static_cast<double>(std::max(rows, cols) - 1) * s.min_spacing > s.region_size)
        throw DomainError("scenario: " + std::to_string(s.antennas) + " antennas at spacing " +
                          std::to_string(s.min_spacing) + " do not fit in a region of side " +
                          std::to_string(s.region_size));
    if (!s.aav_positions.empty() && s.aav_positions.size() != s.num_aavs)
        throw DomainError("scenario: aav_positions must list exactly num_aavs entries");
    if (!s.target_positions.empty() && s.target_positions.size() != s.num_aavs)
        throw DomainError("scenario: target_positions must list exactly num_aavs entries");
    if (!s.task_bits.empty() && s.task_bits.size() != s.num_aavs)
        throw DomainError("scenario: task_bits must list exactly num_aavs entries");
    if (!(s.task_bits_min > 0.0) || s.task_bits_max < s.task_bits_min)
        throw DomainError("scenario: task size range must satisfy 0 < min <= max");

    ScenarioInstance inst;
    auto& c = inst.config;
    c.num_aavs = s.num_aavs;
    c.antennas = s.antennas;
    c.region_size = s.region_size;
    c.min_spacing = s.min_spacing;
    c.wavelength = s.wavelength;
    c.bs_position = s.bs_position;
    c.seed = seed;
    for (std::size_t m = 0; m < s.num_aavs; ++m) {
        const Vec3 aav = s.aav_positions.empty() ? default_aav_position(m, s.aav_height) : s.aav_positions[m];
        c.aav_positions.push_back(aav);
        c.target_positions.push_back(s.target_positions.empty() ? Vec3{aav.x + s.target_offset, aav.y, 0.0}
                                                                : s.target_positions[m]);
        if (s.task_bits.empty()) {
            RandomStream rng(derive_seed(seed, StreamTag::TaskSize, {m}));
            c.task_bits.push_back(rng.uniform(s.task_bits_min, s.task_bits_max));
        } else {
            c.task_bits.push_back(s.task_bits[m]);
        }
        c.max_power.push_back(s.max_power);
    }
    c.gamma_min = s.gamma_min;
    c.bs_compute = s.bs_compute;
    c.cycles_per_bit = s.cycles_per_bit;
    c.bandwidth = s.bandwidth;
    c.noise_power = std::pow(10.0, (s.noise_power_dbm - 30.0) / 10.0);
    c.reference_gain = std::pow(10.0, s.reference_gain_db / 10.0);
    c.rician_factor = s.rician_factor;
    c.validate();
    for (std::size_t m = 0; m < c.num_aavs; ++m) {
        // Coincident points would break the channel model later.
        direction_cosines(c.aav_positions[m], c.bs_position);
        direction_cosines(c.aav_positions[m], c.target_positions[m]);
    }
    inst.nlos = draw_nlos(seed, c.num_aavs, c.antennas);
    return inst;
}

// Uniform grid at min_spacing pitch, row-major, centered in the region; the
// same array on every AAV.
inline AntennaLayout fpa_layout(const ScenarioConfig& scenario) {
    const auto [rows, cols] = grid_shape(scenario.antennas);
    const double pitch = scenario.min_spacing;
    if (static_cast<double>(std::max(rows, cols) - 1) * pitch > scenario.region_size)
        throw DomainError("fpa: antenna grid does not fit in the region");
    const double x0 = 0.5 * scenario.region_size - 0.5 * pitch * static_cast<double>(cols - 1);
    const double y0 = 0.5 * scenario.region_size - 0.5 * pitch * static_cast<double>(rows - 1);
    AntennaLayout layout(scenario.num_aavs, scenario.antennas);
    for (auto& array : layout.coords)
        for (std::size_t n = 0; n < scenario.antennas; ++n)
            array[n] = {x0 + pitch * static_cast<double>(n % cols), y0 + pitch * static_cast<double>(n / cols)};
    return layout;
}

// Rejection sampling of whole arrays until every pair respects min_spacing.
inline AntennaLayout rpa_layout(RandomStream& rng, const ScenarioConfig& scenario, std::size_t max_attempts = 10000) {
    AntennaLayout layout(scenario.num_aavs, scenario.antennas);
    for (auto& array : layout.coords) {
        bool ok = false;
        for (std::size_t attempt = 0; attempt < max_attempts && !ok; ++attempt) {
            for (auto& p : array)
                p = {rng.uniform(0.0, scenario.region_size), rng.uniform(0.0, scenario.region_size)};
            ok = true;
            for (std::size_t i = 0; i < array.size() && ok; ++i)
                for (std::size_t j = i + 1; j < array.size() && ok; ++j)
                    ok = distance(array[i], array[j]) >= scenario.min_spacing;
        }
        if (!ok)
            throw DomainError("rpa: no spacing-feasible layout found within the sampling budget");
    }
    return layout;
}

inline AntennaLayout rpa_layout(const ScenarioConfig& scenario) {
    RandomStream rng(derive_seed(scenario.seed, StreamTag::RandomLayout));
    return rpa_layout(rng, scenario);
}

enum class Scheme { MA, FPA, RPA };

inline std::string_view to_string(Scheme s) {
    switch (s) {
    case Scheme::MA: return "ma";
    case Scheme::FPA: return "fpa";
    case Scheme::RPA: return "rpa";
    }
    return "?";
}

inline std::optional<Scheme> parse_scheme(std::string_view text) {
    if (text == "ma") return Scheme::MA;
    if (text == "fpa") return Scheme::FPA;
    if (text == "rpa") return Scheme::RPA;
    return std::nullopt;
}

enum class SweepVariable { BsCompute, MaxPower, Antennas, Aavs };

inline std::string_view to_string(SweepVariable v) {
    switch (v) {
    case SweepVariable::BsCompute: return "f_bs_max";
    case SweepVariable::MaxPower: return "P_max";
    case SweepVariable::Antennas: return "N";
    case SweepVariable::Aavs: return "M";
    }
    return "?";
}

inline std::optional<SweepVariable> parse_sweep_variable(std::string_view text) {
    if (text == "f_bs_max") return SweepVariable::BsCompute;
    if (text == "P_max") return SweepVariable::MaxPower;
    if (text == "N") return SweepVariable::Antennas;
    if (text == "M") return SweepVariable::Aavs;
    return std::nullopt;
}

struct SweepSpec {
    SweepVariable variable = SweepVariable::BsCompute;
    std::vector<double> values{5e9, 1e10, 2e10, 4e10};
    std::size_t instances = 5;
    std::vector<Scheme> schemes{Scheme::MA, Scheme::FPA, Scheme::RPA};
    std::optional<std::size_t> particles;   // PSO overrides for sweep cells
    std::optional<std::size_t> iterations;

    void validate() const {
        if (values.empty())
            throw DomainError("sweep: values must be non-empty");
        if (!std::is_sorted(values.begin(), values.end()))
            throw DomainError("sweep: values must be sorted ascending");
        if (instances < 1)
            throw DomainError("sweep: instances must be at least 1");
        if (schemes.empty())
            throw DomainError("sweep: at least one scheme is required");
        if (variable == SweepVariable::Antennas || variable == SweepVariable::Aavs)
            for (double v : values)
                if (!(v >= 1.0) || v != std::floor(v))
                    throw DomainError("sweep: N and M values must be positive integers");
    }

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

inline ScenarioSettings apply_sweep_value(ScenarioSettings s, SweepVariable variable, double value) {
    switch (variable) {
    case SweepVariable::BsCompute: s.bs_compute = value; break;
    case SweepVariable::MaxPower: s.max_power = value; break;
    case SweepVariable::Antennas: s.antennas = static_cast<std::size_t>(value); break;
    case SweepVariable::Aavs: s.num_aavs = static_cast<std::size_t>(value); break;
    }
    return s;
}

// Instance draws (task sizes, NLoS, RPA layout) depend only on the instance
// index, so a fixed layout sees identical channels along a sweep.
inline std::uint64_t instance_seed(std::uint64_t master, std::size_t instance) {
    return derive_seed(master, StreamTag::Instance, {instance});
}

inline std::uint64_t optimizer_seed(std::uint64_t master, std::size_t value_index, std::size_t instance) {
    return derive_seed(master, StreamTag::Optimizer, {value_index, instance});
}

struct SchemeOutcome {
    AntennaLayout layout;
    InnerSolution solution;
    double fitness = 0.0;
    bool feasible = false;
    std::vector<double> trace;  // MA only
};

inline SchemeOutcome evaluate_scheme(const ScenarioInstance& inst, Scheme scheme, const PsoParams& pso,
                                     std::uint64_t pso_seed) {
    SchemeOutcome out;
    const auto& c = inst.config;
    if (scheme == Scheme::MA) {
        std::vector<AntennaLayout> seeded;
        if (pso.inject_baselines) {
            seeded.push_back(fpa_layout(c));
            seeded.push_back(rpa_layout(c));
        }
        auto res = run_optimizer(c, pso, inst.nlos, pso_seed, seeded);
        out.layout = std::move(res.layout);
        out.solution = std::move(res.solution);
        out.fitness = res.fitness;
        out.feasible = res.feasible;
        out.trace = std::move(res.trace);
        return out;
    }
    out.layout = scheme == Scheme::FPA ? fpa_layout(c) : rpa_layout(c);
    auto eval = evaluate_fitness(out.layout, c, inst.nlos, pso);
    out.solution = std::move(eval.inner);
    out.fitness = eval.fitness;
    out.feasible = eval.spacing_violations == 0 && eval.sensing_violations == 0;
    return out;
}

struct SweepRow {
    std::string variable;
    double value = 0.0;
    Scheme scheme = Scheme::MA;
    std::size_t instance = 0;
    std::uint64_t seed = 0;
    double phi = kInfiniteLatency;
    double t_tran_max = kInfiniteLatency;
    double t_comp_max = kInfiniteLatency;
    bool feasible = false;
    std::string error;  // non-empty for failed cells
};

struct SweepSummary {
    double value = 0.0;
    Scheme scheme = Scheme::MA;
    std::size_t count = 0;   // successful, finite cells
    double mean_phi = 0.0;
    double std_phi = 0.0;    // sample standard deviation
};

struct SweepTable {
    std::string variable;
    std::vector<SweepRow> rows;
    std::vector<SweepSummary> summary;
};

inline std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows) {
    std::map<std::tuple<double, int>, std::vector<double>> groups;
    std::vector<std::tuple<double, int>> order;
    for (const auto& r : rows) {
        const auto key = std::make_tuple(r.value, static_cast<int>(r.scheme));
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted)
            order.push_back(key);
        if (r.error.empty() && std::isfinite(r.phi))
            it->second.push_back(r.phi);
    }
    std::vector<SweepSummary> out;
    for (const auto& key : order) {
        const auto& v = groups[key];
        SweepSummary s;
        s.value = std::get<0>(key);
        s.scheme = static_cast<Scheme>(std::get<1>(key));
        s.count = v.size();
        if (!v.empty()) {
            double sum = 0.0;
            for (double x : v)
                sum += x;
            s.mean_phi = sum / static_cast<double>(v.size());
            if (v.size() > 1) {
                double ss = 0.0;
                for (double x : v)
                    ss += (x - s.mean_phi) * (x - s.mean_phi);
                s.std_phi = std::sqrt(ss / static_cast<double>(v.size() - 1));
            }
        } else {
            s.mean_phi = kInfiniteLatency;
        }
        out.push_back(s);
    }
    return out;
}

// Rows ordered by (value, scheme, instance). Failing cells are recorded with
// their error message and do not abort the sweep.
inline SweepTable run_sweep(const SweepSpec& spec, const ScenarioSettings& base, PsoParams pso,
                            std::uint64_t master_seed) {
    spec.validate();
    if (spec.particles)
        pso.particles = *spec.particles;
    if (spec.iterations)
        pso.iterations = *spec.iterations;

    SweepTable table;
    table.variable = std::string(to_string(spec.variable));
    for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
        const double value = spec.values[vi];
        const auto settings = apply_sweep_value(base, spec.variable, value);
        for (Scheme scheme : spec.schemes) {
            for (std::size_t k = 0; k < spec.instances; ++k) {
                SweepRow row;
                row.variable = table.variable;
                row.value = value;
                row.scheme = scheme;
                row.instance = k;
                row.seed = instance_seed(master_seed, k);
                try {
                    const auto inst = build_scenario(row.seed, settings);
                    const auto out = evaluate_scheme(inst, scheme, pso, optimizer_seed(master_seed, vi, k));
                    row.phi = out.solution.phi;
                    row.t_tran_max = *std::max_element(out.solution.t_tran.begin(), out.solution.t_tran.end());
                    row.t_comp_max = *std::max_element(out.solution.t_comp.begin(), out.solution.t_comp.end());
                    row.feasible = out.feasible;
                } catch (const DomainError& e) {
                    row.error = e.what();
                }
                table.rows.push_back(std::move(row));
            }
        }
    }
    std::stable_sort(table.rows.begin(), table.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.value, a.scheme, a.instance) < std::tie(b.value, b.scheme, b.instance);
    });
    table.summary = summarize(table.rows);
    return table;
}

inline std::vector<double> convergence_trace(const ScenarioInstance& inst, const PsoParams& pso, std::uint64_t seed) {
    return evaluate_scheme(inst, Scheme::MA, pso, seed).trace;
}

} // namespace maiscc
