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
#include "maiscc/parallel.hpp"
#include "maiscc/rng.hpp"
#include "maiscc/signal_metrics.hpp"
#include "maiscc/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace maiscc {

struct PsoParams {
    std::size_t particles = 100;
    std::size_t iterations = 200;
    double c1 = 1.5;
    double c2 = 1.5;
    double omega_max = 0.9;
    double omega_min = 0.4;
    double step = 1.0;             // position update gain
    double velocity_limit = 0.0;   // per-component |v| bound; <= 0 means the box width
    double penalty_spacing = 100.0;
    double penalty_sensing = 100.0;
    std::size_t threads = 1;
    bool inject_baselines = true;  // seed FPA/RPA layouts as particles 0 and 1

    friend bool operator==(const PsoParams&, const PsoParams&) = default;

    void validate() const {
        if (particles < 1)
            throw DomainError("pso: need at least one particle");
        if (!(omega_min > 0.0) || omega_max < omega_min)
            throw DomainError("pso: require omega_max >= omega_min > 0");
        if (penalty_spacing < 0.0 || penalty_sensing < 0.0)
            throw DomainError("pso: penalty weights must be non-negative");
        if (!(step > 0.0))
            throw DomainError("pso: step must be positive");
        if (c1 < 0.0 || c2 < 0.0)
            throw DomainError("pso: learning factors must be non-negative");
    }
};

struct BestRecord {
    std::vector<double> position;
    double fitness = std::numeric_limits<double>::infinity();
};

struct SwarmState {
    std::vector<std::vector<double>> positions;
    std::vector<std::vector<double>> velocities;
    std::vector<BestRecord> pbest;
    BestRecord gbest;
    std::size_t iter = 0;
};

inline double inertia_weight(std::size_t i, const PsoParams& params) {
    if (params.iterations == 0)
        return params.omega_max;
    return params.omega_max -
           (params.omega_max - params.omega_min) * static_cast<double>(i) / static_cast<double>(params.iterations);
}

// v' = omega v + c1 tau1 (pbest - x) + c2 tau2 (gbest - x), optionally clamped
// to [-limit, limit] per component (limit <= 0 disables the clamp).
inline std::vector<double> update_velocity(const SwarmState& state, std::size_t p, double tau1, double tau2,
                                           double omega, const PsoParams& params, double limit = 0.0) {
    const auto& x = state.positions[p];
    const auto& v = state.velocities[p];
    const auto& local = state.pbest[p].position;
    const auto& global = state.gbest.position;
    std::vector<double> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        double next = omega * v[k] + params.c1 * tau1 * (local[k] - x[k]) + params.c2 * tau2 * (global[k] - x[k]);
        if (limit > 0.0)
            next = std::clamp(next, -limit, limit);
        out[k] = next;
    }
    return out;
}

inline std::vector<double> update_position_project(const SwarmState& state, std::size_t p,
                                                   std::span<const double> velocity, double step, double lower,
                                                   double upper) {
    const auto& x = state.positions[p];
    std::vector<double> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        out[k] = std::clamp(x[k] + step * velocity[k], lower, upper);
    return out;
}

// Strict improvement replaces a best; ties keep the incumbent.
inline void update_bests(SwarmState& state, std::size_t p, double fitness, std::span<const double> position) {
    auto& local = state.pbest[p];
    if (fitness < local.fitness) {
        local.fitness = fitness;
        local.position.assign(position.begin(), position.end());
    }
    if (fitness < state.gbest.fitness) {
        state.gbest.fitness = fitness;
        state.gbest.position.assign(position.begin(), position.end());
    }
}

struct SwarmResult {
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    std::vector<double> trace;  // gbest fitness after init and after each iteration
};

// Box-constrained PSO minimizing `fitness` (thread-safe callable taking a
// std::span<const double>). Particles are advanced synchronously: every
// particle of iteration i sees the bests from iteration i-1, and bests are
// reduced in ascending particle index, so results do not depend on the
// thread count.
template <class Fitness>
SwarmResult swarm_minimize(std::size_t dims, double lower, double upper, const PsoParams& params,
                           std::uint64_t seed, Fitness&& fitness,
                           const std::vector<std::vector<double>>& seeded = {}) {
    params.validate();
    const std::size_t P = params.particles;
    const double limit = params.velocity_limit > 0.0 ? params.velocity_limit : (upper - lower);

    SwarmState state;
    state.positions.resize(P);
    state.velocities.assign(P, std::vector<double>(dims, 0.0));
    state.pbest.resize(P);
    for (std::size_t p = 0; p < P; ++p) {
        auto& x = state.positions[p];
        if (p < seeded.size()) {
            if (seeded[p].size() != dims)
                throw DomainError("pso: seeded particle has wrong dimension");
            x = seeded[p];
            for (auto& c : x)
                c = std::clamp(c, lower, upper);
        } else {
            RandomStream rng(derive_seed(seed, StreamTag::SwarmInit, {p}));
            x.resize(dims);
            for (auto& c : x)
                c = rng.uniform(lower, upper);
        }
    }

    std::vector<double> scores(P);
    auto evaluate_all = [&] {
        parallel_for(P, params.threads, [&](std::size_t p) { scores[p] = fitness(std::span<const double>(state.positions[p])); });
        for (std::size_t p = 0; p < P; ++p)
            update_bests(state, p, scores[p], state.positions[p]);
    };

    SwarmResult result;
    result.trace.reserve(params.iterations + 1);
    evaluate_all();
    // Non-finite (NaN) scores never become bests; fall back to the initial positions.
    for (std::size_t p = 0; p < P; ++p)
        if (state.pbest[p].position.empty())
            state.pbest[p].position = state.positions[p];
    if (state.gbest.position.empty())
        state.gbest.position = state.positions[0];
    result.trace.push_back(state.gbest.fitness);

    for (std::size_t i = 1; i <= params.iterations; ++i) {
        state.iter = i;
        const double omega = inertia_weight(i, params);
        parallel_for(P, params.threads, [&](std::size_t p) {
            RandomStream rng(derive_seed(seed, StreamTag::SwarmStep, {i, p}));
            const double tau1 = rng.uniform();
            const double tau2 = rng.uniform();
            auto v = update_velocity(state, p, tau1, tau2, omega, params, limit);
            auto x = update_position_project(state, p, v, params.step, lower, upper);
            // A component stopped by the box loses its velocity so the particle
            // does not keep pressing against the wall.
            for (std::size_t k = 0; k < dims; ++k)
                if (x[k] != state.positions[p][k] + params.step * v[k])
                    v[k] = 0.0;
            state.velocities[p] = std::move(v);
            state.positions[p] = std::move(x);
            scores[p] = fitness(std::span<const double>(state.positions[p]));
        });
        for (std::size_t p = 0; p < P; ++p)
            update_bests(state, p, scores[p], state.positions[p]);
        result.trace.push_back(state.gbest.fitness);
    }

    result.best_position = state.gbest.position;
    result.best_fitness = state.gbest.fitness;
    return result;
}

// Base latency substituted for an infinite objective so penalties still
// order particles.
inline constexpr double kInfeasibleBase = 1e6;

struct FitnessResult {
    double fitness = 0.0;
    InnerSolution inner;
    std::size_t spacing_violations = 0;
    std::size_t sensing_violations = 0;
};

inline FitnessResult evaluate_fitness(const AntennaLayout& layout, const ScenarioConfig& scenario,
                                      const NlosDraws& nlos, const PsoParams& params) {
    FitnessResult out;
    out.inner = solve_inner(scenario, layout, nlos);
    out.spacing_violations = count_spacing_violations(layout, scenario.min_spacing);
    out.sensing_violations = out.inner.sensing_violations();
    const double base = std::isfinite(out.inner.phi) ? out.inner.phi : kInfeasibleBase;
    out.fitness = base + params.penalty_spacing * static_cast<double>(out.spacing_violations) +
                  params.penalty_sensing * static_cast<double>(out.sensing_violations);
    return out;
}

inline FitnessResult evaluate_fitness(std::span<const double> position, const ScenarioConfig& scenario,
                                      const NlosDraws& nlos, const PsoParams& params) {
    return evaluate_fitness(AntennaLayout::from_flat(position, scenario.num_aavs, scenario.antennas), scenario, nlos,
                            params);
}

// Pushes violating antenna pairs apart along their separating direction and
// re-projects into the region. Returns true when all spacings hold.
inline bool repair_layout(AntennaLayout& layout, double min_spacing, double region_size, std::size_t max_passes = 500) {
    const double target = min_spacing * (1.0 + 1e-9);
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        bool moved = false;
        for (auto& array : layout.coords) {
            for (std::size_t i = 0; i < array.size(); ++i)
                for (std::size_t j = i + 1; j < array.size(); ++j) {
                    const double d = distance(array[i], array[j]);
                    if (d >= min_spacing)
                        continue;
                    double ux = 1.0, uy = 0.0;
                    if (d > 0.0) {
                        ux = (array[j].x - array[i].x) / d;
                        uy = (array[j].y - array[i].y) / d;
                    }
                    const double push = 0.5 * (target - d);
                    array[i].x = std::clamp(array[i].x - push * ux, 0.0, region_size);
                    array[i].y = std::clamp(array[i].y - push * uy, 0.0, region_size);
                    array[j].x = std::clamp(array[j].x + push * ux, 0.0, region_size);
                    array[j].y = std::clamp(array[j].y + push * uy, 0.0, region_size);
                    moved = true;
                }
        }
        if (!moved)
            break;
    }
    return count_spacing_violations(layout, min_spacing) == 0;
}

struct OptimizerResult {
    AntennaLayout layout;
    InnerSolution solution;
    double fitness = 0.0;      // fitness of the reported layout
    std::vector<double> trace; // gbest fitness per iteration, length iterations + 1
    bool feasible = false;
    bool repaired = false;
};

inline void require_sensing_feasible(const ScenarioConfig& scenario) {
    for (std::size_t m = 0; m < scenario.num_aavs; ++m)
        if (!sensing_feasibility(scenario.max_power[m], scenario.antennas, scenario.target_distance(m),
                                 scenario.gamma_min))
            throw DomainError("sensing infeasible for AAV " + std::to_string(m) +
                              ": P_max * N < d^2 * gamma_min");
}

inline OptimizerResult run_optimizer(const ScenarioConfig& scenario, const PsoParams& params, const NlosDraws& nlos,
                                     std::uint64_t seed, const std::vector<AntennaLayout>& seeded_layouts = {}) {
    scenario.validate();
    params.validate();
    require_sensing_feasible(scenario);

    std::vector<std::vector<double>> seeded;
    for (const auto& layout : seeded_layouts)
        seeded.push_back(layout.flatten());

    const std::size_t dims = scenario.num_aavs * scenario.antennas * 2;
    auto fitness = [&](std::span<const double> x) { return evaluate_fitness(x, scenario, nlos, params).fitness; };
    auto swarm = swarm_minimize(dims, 0.0, scenario.region_size, params, seed, fitness, seeded);

    OptimizerResult out;
    out.trace = std::move(swarm.trace);
    out.layout = AntennaLayout::from_flat(swarm.best_position, scenario.num_aavs, scenario.antennas);
    if (count_spacing_violations(out.layout, scenario.min_spacing) > 0) {
        out.repaired = true;
        repair_layout(out.layout, scenario.min_spacing, scenario.region_size);
    }
    auto eval = evaluate_fitness(out.layout, scenario, nlos, params);
    out.fitness = eval.fitness;
    out.solution = std::move(eval.inner);
    out.feasible = eval.spacing_violations == 0 && eval.sensing_violations == 0 &&
                   within_region(out.layout, scenario.region_size);
    return out;
}

} // namespace maiscc
