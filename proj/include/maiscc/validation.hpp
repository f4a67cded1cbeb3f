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

// Randomized cross-checks of the inner solver against the brute-force
// oracles. Shared by the `validate` CLI command and the acceptance suite.

#pragma once

#include "maiscc/geometry_channel.hpp"
#include "maiscc/inner_solver.hpp"
#include "maiscc/oracles.hpp"
#include "maiscc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace maiscc::validation {

struct BeamCase {
    CVec h;
    CVec g;
    double max_power = 1.0;
    double target_distance = 1.0;
    double gamma_min = 0.0;
    double noise_power = 1.0;
};

inline CVec random_steering(RandomStream& rng, std::size_t n) {
    CVec g(static_cast<Eigen::Index>(n));
    for (auto& x : g)
        x = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
    return g;
}

// Random h, steering-like g and a sensing threshold strictly between the MRT
// gain and the P N bound, so the constraint binds.
inline BeamCase random_binding_case(RandomStream& rng, std::size_t n) {
    BeamCase c;
    c.h.resize(static_cast<Eigen::Index>(n));
    for (auto& x : c.h)
        x = rng.complex_normal() * 1e-5;
    c.g = random_steering(rng, n);
    c.max_power = rng.uniform(0.5, 2.0);
    c.noise_power = 1e-13;
    const double mrt_gain = c.max_power * std::norm(c.g.dot(c.h.normalized()));
    const double bound = c.max_power * static_cast<double>(n);
    const double S = mrt_gain + rng.uniform(0.1, 0.9) * (bound - mrt_gain);
    c.target_distance = rng.uniform(20.0, 80.0);
    c.gamma_min = S / (c.target_distance * c.target_distance);
    return c;
}

struct CheckReport {
    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    double worst = 0.0;  // worst relative deviation seen
};

inline CheckReport check_beamforming(std::uint64_t seed, std::size_t cases, double tol = 1e-3) {
    CheckReport rep{"beamforming vs grid oracle"};
    for (std::size_t k = 0; k < cases; ++k) {
        RandomStream rng(derive_seed(seed, StreamTag::Validation, {1, k}));
        const auto c = random_binding_case(rng, 2 + k % 2);
        const auto solved = solve_beamforming_per_aav(c.h, c.g, c.max_power, c.target_distance, c.gamma_min,
                                                      c.noise_power);
        const auto ref = oracle::beamforming_grid(c.h, c.g, c.max_power, c.target_distance, c.gamma_min,
                                                  c.noise_power);
        const double rel = std::abs(solved.snr - ref.snr) / std::max(ref.snr, 1e-300);
        rep.worst = std::max(rep.worst, rel);
        (rel <= tol && solved.feasible == ref.feasible ? rep.passed : rep.failed)++;
    }
    return rep;
}

struct AllocationCase {
    std::vector<double> rates;
    std::vector<double> task_bits;
    double cycles_per_bit = 100.0;
    double bs_compute = 1e10;
};

inline AllocationCase random_allocation_case(RandomStream& rng, std::size_t M) {
    AllocationCase c;
    for (std::size_t m = 0; m < M; ++m) {
        c.rates.push_back(rng.uniform(1e6, 2e7));
        c.task_bits.push_back(rng.uniform(1e7, 1.5e7));
    }
    c.bs_compute = rng.uniform(1e9, 4e10);
    return c;
}

inline CheckReport check_allocation(std::uint64_t seed, std::size_t cases, double tol = 1e-4) {
    CheckReport rep{"allocation vs grid oracle"};
    for (std::size_t k = 0; k < cases; ++k) {
        RandomStream rng(derive_seed(seed, StreamTag::Validation, {2, k}));
        const auto c = random_allocation_case(rng, 2 + k % 2);
        const auto alloc = allocate_computation(c.rates, c.task_bits, c.cycles_per_bit, c.bs_compute);
        const double ref = oracle::allocation_grid(c.rates, c.task_bits, c.cycles_per_bit, c.bs_compute);
        const double rel = std::abs(alloc.phi - ref) / ref;
        rep.worst = std::max(rep.worst, rel);
        (rel <= tol ? rep.passed : rep.failed)++;
    }
    return rep;
}

// Small random scenario: M <= 2 AAVs with N <= 3 antennas at random layouts.
inline ScenarioConfig random_small_scenario(RandomStream& rng, std::size_t M, std::size_t N) {
    ScenarioConfig s;
    s.num_aavs = M;
    s.antennas = N;
    s.region_size = 5.0;
    s.min_spacing = 0.5;
    s.bs_position = {0.0, 0.0, 0.0};
    for (std::size_t m = 0; m < M; ++m) {
        const Vec3 aav{rng.uniform(50.0, 550.0), rng.uniform(50.0, 550.0), 50.0};
        s.aav_positions.push_back(aav);
        s.target_positions.push_back({aav.x + 20.0, aav.y, 0.0});
        s.task_bits.push_back(rng.uniform(1e7, 1.5e7));
        s.max_power.push_back(rng.uniform(0.5, 2.0));
    }
    s.gamma_min = rng.uniform(0.1, 0.6) * static_cast<double>(N) * 0.5 / 2900.0;
    s.noise_power = 1e-14;
    s.reference_gain = 1e-6;
    s.rician_factor = rng.uniform(0.5, 20.0);
    s.seed = static_cast<std::uint64_t>(rng.uniform() * 1e9);
    return s;
}

inline AntennaLayout random_layout(RandomStream& rng, const ScenarioConfig& s) {
    AntennaLayout layout(s.num_aavs, s.antennas);
    for (auto& array : layout.coords)
        for (auto& p : array)
            p = {rng.uniform(0.0, s.region_size), rng.uniform(0.0, s.region_size)};
    return layout;
}

inline CheckReport check_joint(std::uint64_t seed, std::size_t cases, double tol = 1e-2) {
    CheckReport rep{"inner solve vs joint oracle"};
    for (std::size_t k = 0; k < cases; ++k) {
        RandomStream rng(derive_seed(seed, StreamTag::Validation, {3, k}));
        const std::size_t M = 1 + k % 2;
        const std::size_t N = 2 + (k / 2) % 2;
        const auto s = random_small_scenario(rng, M, N);
        const auto layout = random_layout(rng, s);
        const auto nlos = draw_nlos(s.seed, M, N);
        const auto ch = generate_channel(s, layout, nlos);
        const auto sol = solve_inner(s, ch);
        const auto ref = oracle::joint_small(s, ch);
        const double rel = std::abs(sol.phi - ref.phi) / ref.phi;
        rep.worst = std::max(rep.worst, rel);
        (rel <= tol ? rep.passed : rep.failed)++;
    }
    return rep;
}

} // namespace maiscc::validation
