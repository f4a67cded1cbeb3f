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
#include "maiscc/types.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace maiscc {

// Beamforming, sensing power and compute allocation for every AAV at a fixed
// antenna layout. The sensing covariance is stored in compact form
// V_m = sensing_power[m] * g_hat g_hat^H.
struct InnerSolution {
    std::vector<CVec> w;
    std::vector<double> sensing_power;
    std::vector<double> f;
    std::vector<double> rate;
    std::vector<double> t_tran;
    std::vector<double> t_comp;
    std::vector<double> latency;
    std::vector<bool> sensing_feasible;
    double phi = kInfiniteLatency;

    bool feasible() const { return std::all_of(sensing_feasible.begin(), sensing_feasible.end(), [](bool b) { return b; }); }

    std::size_t sensing_violations() const {
        return static_cast<std::size_t>(std::count(sensing_feasible.begin(), sensing_feasible.end(), false));
    }
};

// Full-matrix sensing covariance p * g g^H / ||g||^2.
inline CMat sensing_covariance(double sensing_power, const CVec& g) {
    const double norm2 = g.squaredNorm();
    if (norm2 == 0.0)
        return CMat::Zero(g.size(), g.size());
    return (sensing_power / norm2) * (g * g.adjoint());
}

// g^H (w w^H + V) g.
inline double beampattern_gain(const CVec& w, const CMat& V, const CVec& g) {
    if (w.size() != g.size() || V.rows() != g.size() || V.cols() != g.size())
        throw DomainError("beampattern_gain: dimension mismatch");
    const double info = std::norm(g.dot(w));
    const double sensing = std::real(g.dot(V * g));
    return info + sensing;
}

// Compact form: g^H (p g_hat g_hat^H) g = p ||g||^2.
inline double beampattern_gain(const CVec& w, double sensing_power, const CVec& g) {
    if (w.size() != g.size())
        throw DomainError("beampattern_gain: dimension mismatch");
    return std::norm(g.dot(w)) + sensing_power * g.squaredNorm();
}

inline double rate_from_snr(double snr, double bandwidth, std::size_t num_aavs) {
    return bandwidth / static_cast<double>(num_aavs) * std::log2(1.0 + snr);
}

// (B/M) log2(1 + |h^H w|^2 / sigma^2), FDMA with equal bands.
inline double achievable_rate(const CVec& h, const CVec& w, const ScenarioConfig& scenario) {
    if (h.size() != w.size())
        throw DomainError("achievable_rate: dimension mismatch");
    return rate_from_snr(std::norm(h.dot(w)) / scenario.noise_power, scenario.bandwidth, scenario.num_aavs);
}

struct LatencyBreakdown {
    double tran = 0.0;
    double comp = 0.0;
    double total = 0.0;
};

inline LatencyBreakdown latency_components(double task_bits, double rate, double compute, double cycles_per_bit) {
    if (!(task_bits > 0.0))
        throw DomainError("latency: task size must be positive");
    if (rate < 0.0 || compute < 0.0 || cycles_per_bit < 0.0)
        throw DomainError("latency: negative input");
    LatencyBreakdown t;
    t.tran = rate > 0.0 ? task_bits / rate : kInfiniteLatency;
    t.comp = compute > 0.0 ? cycles_per_bit * task_bits / compute : kInfiniteLatency;
    t.total = t.tran + t.comp;
    return t;
}

inline double system_objective(std::span<const double> latencies) {
    if (latencies.empty())
        throw DomainError("system_objective: empty system");
    return *std::max_element(latencies.begin(), latencies.end());
}

inline double system_objective(const InnerSolution& solution) { return system_objective(solution.latency); }

} // namespace maiscc
