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

#include "maiscc/rng.hpp"
#include "maiscc/types.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace maiscc {

// Resolved physical and algorithmic constants of one scenario instance.
// Powers are linear watts, gains linear, distances in meters, antenna
// coordinates in wavelengths.
struct ScenarioConfig {
    std::size_t num_aavs = 3;
    std::size_t antennas = 4;
    double region_size = 20.0;  // side of the square movable region (wavelengths)
    double min_spacing = 0.5;   // minimum inter-antenna distance (wavelengths)
    double wavelength = 0.1;    // carrier wavelength (m)

    Vec3 bs_position{};
    std::vector<Vec3> aav_positions;
    std::vector<Vec3> target_positions;

    std::vector<double> task_bits;  // D_m
    std::vector<double> max_power;  // P_m^max (W)

    double gamma_min = 0.0;         // beampattern gain per squared meter
    double bs_compute = 1e10;       // total BS cycles/s
    double cycles_per_bit = 100.0;
    double bandwidth = 3e6;         // Hz, shared by FDMA
    double noise_power = 1e-14;     // W
    double reference_gain = 1e-6;   // channel gain at 1 m
    double rician_factor = 10.0;    // linear; +inf means LoS only

    std::uint64_t seed = 0;

    double target_distance(std::size_t m) const {
        const auto& a = aav_positions.at(m);
        const auto& t = target_positions.at(m);
        return std::sqrt((a.x - t.x) * (a.x - t.x) + (a.y - t.y) * (a.y - t.y) + (a.z - t.z) * (a.z - t.z));
    }

    // Right-hand side of the beampattern constraint, d_m^2 * Gamma_min.
    double sensing_threshold(std::size_t m) const {
        const double d = target_distance(m);
        return d * d * gamma_min;
    }

    void validate() const {
        if (num_aavs < 1)
            throw DomainError("scenario: at least one AAV is required");
        if (antennas < 1)
            throw DomainError("scenario: at least one antenna per AAV is required");
        if (!(region_size > 0.0))
            throw DomainError("scenario: region_size must be positive");
        if (!(min_spacing > 0.0) || min_spacing > region_size * std::sqrt(2.0))
            throw DomainError("scenario: min_spacing must lie in (0, region_size*sqrt(2)]");
        if (!(wavelength > 0.0))
            throw DomainError("scenario: wavelength must be positive");
        if (aav_positions.size() != num_aavs || target_positions.size() != num_aavs)
            throw DomainError("scenario: need one AAV and one target position per AAV");
        if (task_bits.size() != num_aavs || max_power.size() != num_aavs)
            throw DomainError("scenario: need one task size and one power budget per AAV");
        for (std::size_t m = 0; m < num_aavs; ++m) {
            if (!(task_bits[m] > 0.0))
                throw DomainError("scenario: task sizes must be positive");
            if (!(max_power[m] > 0.0))
                throw DomainError("scenario: power budgets must be positive");
        }
        if (!(gamma_min >= 0.0))
            throw DomainError("scenario: gamma_min must be non-negative");
        if (!(bs_compute > 0.0) || !(cycles_per_bit > 0.0) || !(bandwidth > 0.0) || !(noise_power > 0.0) ||
            !(reference_gain > 0.0))
            throw DomainError("scenario: compute, cycles/bit, bandwidth, noise and reference gain must be positive");
        if (!(rician_factor >= 0.0))
            throw DomainError("scenario: rician_factor must be non-negative");
    }
};

// Per-AAV antenna coordinates (wavelengths), coords[m][n].
struct AntennaLayout {
    std::vector<std::vector<Point2>> coords;

    AntennaLayout() = default;
    AntennaLayout(std::size_t num_aavs, std::size_t antennas)
        : coords(num_aavs, std::vector<Point2>(antennas)) {}

    std::size_t num_aavs() const { return coords.size(); }
    std::size_t antennas() const { return coords.empty() ? 0 : coords.front().size(); }

    // Flattened as [m][n][x,y], the particle encoding used by the optimizer.
    std::vector<double> flatten() const {
        std::vector<double> flat;
        flat.reserve(num_aavs() * antennas() * 2);
        for (const auto& array : coords)
            for (const auto& p : array) {
                flat.push_back(p.x);
                flat.push_back(p.y);
            }
        return flat;
    }

    static AntennaLayout from_flat(std::span<const double> flat, std::size_t num_aavs, std::size_t antennas) {
        if (flat.size() != num_aavs * antennas * 2)
            throw DomainError("layout: flat vector has wrong length");
        AntennaLayout layout(num_aavs, antennas);
        std::size_t k = 0;
        for (auto& array : layout.coords)
            for (auto& p : array) {
                p.x = flat[k++];
                p.y = flat[k++];
            }
        return layout;
    }

    friend bool operator==(const AntennaLayout&, const AntennaLayout&) = default;
};

// Number of antenna pairs (within any single array) closer than min_spacing.
inline std::size_t count_spacing_violations(const AntennaLayout& layout, double min_spacing) {
    std::size_t count = 0;
    for (const auto& array : layout.coords)
        for (std::size_t i = 0; i < array.size(); ++i)
            for (std::size_t j = i + 1; j < array.size(); ++j)
                if (distance(array[i], array[j]) < min_spacing)
                    ++count;
    return count;
}

inline bool within_region(const AntennaLayout& layout, double region_size) {
    for (const auto& array : layout.coords)
        for (const auto& p : array)
            if (!(p.x >= 0.0 && p.x <= region_size && p.y >= 0.0 && p.y <= region_size))
                return false;
    return true;
}

struct DirectionCosines {
    double dx = 0.0;  // sin(elevation) cos(azimuth)
    double dy = 0.0;  // sin(elevation) sin(azimuth)
    double dist = 0.0;
};

inline DirectionCosines direction_cosines(const Vec3& from, const Vec3& to) {
    const double ex = to.x - from.x;
    const double ey = to.y - from.y;
    const double ez = to.z - from.z;
    const double dist = std::sqrt(ex * ex + ey * ey + ez * ez);
    if (!(dist > 0.0))
        throw DomainError("degenerate geometry: coincident points");
    return {ex / dist, ey / dist, dist};
}

// Entry n is exp(j 2 pi (x_n dx + y_n dy)), coordinates in wavelengths.
inline CVec steering_vector(std::span<const Point2> array, const DirectionCosines& dir) {
    CVec a(static_cast<Eigen::Index>(array.size()));
    for (std::size_t n = 0; n < array.size(); ++n) {
        const double phase = 2.0 * kPi * (array[n].x * dir.dx + array[n].y * dir.dy);
        a[static_cast<Eigen::Index>(n)] = std::polar(1.0, phase);
    }
    return a;
}

// Frozen small-scale fading, one CN(0, I) vector per AAV.
using NlosDraws = std::vector<CVec>;

// Draws are taken sequentially from a per-(seed, AAV) stream, so the first
// N entries for an array of N antennas are shared with any larger array.
inline NlosDraws draw_nlos(std::uint64_t seed, std::size_t num_aavs, std::size_t antennas) {
    NlosDraws draws(num_aavs);
    for (std::size_t m = 0; m < num_aavs; ++m) {
        RandomStream rng(derive_seed(seed, StreamTag::Nlos, {m}));
        draws[m].resize(static_cast<Eigen::Index>(antennas));
        for (std::size_t n = 0; n < antennas; ++n)
            draws[m][static_cast<Eigen::Index>(n)] = rng.complex_normal();
    }
    return draws;
}

struct ChannelRealization {
    std::vector<CVec> h;                 // AAV -> BS channel
    std::vector<CVec> target_steering;   // g_m toward the sensing target
    std::vector<CVec> nlos;              // frozen draw used for h
    std::vector<DirectionCosines> bs_dir;
    std::vector<DirectionCosines> tgt_dir;
};

inline ChannelRealization generate_channel(const ScenarioConfig& scenario, const AntennaLayout& layout,
                                           const NlosDraws& nlos) {
    const std::size_t M = scenario.num_aavs;
    const std::size_t N = scenario.antennas;
    if (layout.num_aavs() != M || layout.antennas() != N)
        throw DomainError("channel: layout shape does not match scenario");
    if (nlos.size() != M)
        throw DomainError("channel: need one NLoS draw per AAV");

    double los_weight = 1.0;
    double nlos_weight = 0.0;
    if (!std::isinf(scenario.rician_factor)) {
        los_weight = std::sqrt(scenario.rician_factor / (scenario.rician_factor + 1.0));
        nlos_weight = std::sqrt(1.0 / (scenario.rician_factor + 1.0));
    }

    ChannelRealization ch;
    ch.h.reserve(M);
    ch.target_steering.reserve(M);
    ch.nlos = nlos;
    for (std::size_t m = 0; m < M; ++m) {
        if (nlos[m].size() != static_cast<Eigen::Index>(N))
            throw DomainError("channel: NLoS draw length does not match antenna count");
        const auto bs = direction_cosines(scenario.aav_positions[m], scenario.bs_position);
        const auto tgt = direction_cosines(scenario.aav_positions[m], scenario.target_positions[m]);
        const CVec a = steering_vector(layout.coords[m], bs);
        const double scale = std::sqrt(scenario.reference_gain / (bs.dist * bs.dist));
        CVec h = los_weight * a;
        if (nlos_weight > 0.0)
            h += nlos_weight * nlos[m];
        ch.h.push_back(scale * h);
        ch.target_steering.push_back(steering_vector(layout.coords[m], tgt));
        ch.bs_dir.push_back(bs);
        ch.tgt_dir.push_back(tgt);
    }
    return ch;
}

} // namespace maiscc
