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

/*
 * Inner layer: beamforming and BS compute allocation at a fixed layout.
 *
 * The min-max latency problem decouples exactly. Each T_m is decreasing in
 * the rate R_m, and the per-AAV power/sensing constraints do not interact,
 * so every AAV maximizes its own SNR. What remains is a separable min-max
 * over the compute split, solved by bisection on the epigraph level Phi:
 *
 *     f_m(Phi) = beta D_m / (Phi - D_m / R_m),   sum_m f_m(Phi) <= F.
 *
 * Per-AAV rate maximization:
 *
 *     max |h^H w|^2  s.t.  ||w||^2 + p <= P,  |g^H w|^2 + p ||g||^2 >= S
 *
 * with S = d^2 Gamma_min. Only span{h_hat, e_hat} matters, where e_hat is the
 * unit residual of g orthogonal to h_hat. Writing g = c h_hat + r e_hat and
 * w = alpha (c/|c|) h_hat + beta e_hat, the best sensing gain reachable for a
 * given alpha is
 *
 *     G(alpha) = ||g||^2 P                            alpha <= |c| sqrt(P)/||g||
 *     G(alpha) = (|c| alpha + r sqrt(P - alpha^2))^2  otherwise
 *
 * which is non-increasing, so the optimum is the largest alpha with
 * G(alpha) >= S. In angle form alpha = sqrt(P) cos(t), |c| = ||g|| cos(t0):
 *
 *     t* = max(0, t0 - acos(sqrt(S / (||g||^2 P)))).
 */

#pragma once

#include "maiscc/geometry_channel.hpp"
#include "maiscc/signal_metrics.hpp"
#include "maiscc/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace maiscc {

// Max beampattern gain is P * N (all power along g_hat).
inline bool sensing_feasibility(double max_power, std::size_t antennas, double target_distance, double gamma_min) {
    return max_power * static_cast<double>(antennas) >= target_distance * target_distance * gamma_min;
}

struct PerAavBeamResult {
    CVec w;
    double sensing_power = 0.0;
    double snr = 0.0;
    double gain = 0.0;  // achieved beampattern gain toward the target
    bool feasible = false;
};

inline PerAavBeamResult solve_beamforming_per_aav(const CVec& h, const CVec& g, double max_power,
                                                  double target_distance, double gamma_min, double noise_power) {
    if (h.size() != g.size() || h.size() == 0)
        throw DomainError("beamforming: h and g must be non-empty and of equal length");
    if (!(max_power > 0.0) || !(noise_power > 0.0))
        throw DomainError("beamforming: power budget and noise power must be positive");

    const double P = max_power;
    const double S = target_distance * target_distance * gamma_min;
    double g_norm2 = g.squaredNorm();
    const double n_ant = static_cast<double>(g.size());
    if (std::abs(g_norm2 - n_ant) <= 1e-12 * n_ant)
        g_norm2 = n_ant;  // steering vector, ||g||^2 = N up to rounding
    const double h_norm = h.norm();

    PerAavBeamResult res;
    res.feasible = P * g_norm2 >= S;

    auto finish = [&](CVec w, double p) {
        res.w = std::move(w);
        res.sensing_power = p;
        res.snr = std::norm(h.dot(res.w)) / noise_power;
        res.gain = beampattern_gain(res.w, p, g);
        return res;
    };

    if (h_norm == 0.0) {
        // No link to the BS; spend everything on sensing.
        return finish(std::sqrt(P / g_norm2) * g, 0.0);
    }

    const CVec h_hat = h / h_norm;
    const CVec mrt = std::sqrt(P) * h_hat;
    const cplx c = h_hat.dot(g);  // h_hat^H g
    const double c_abs = std::abs(c);

    if (!res.feasible || P * c_abs * c_abs >= S)
        return finish(mrt, 0.0);

    CVec residual = g - c * h_hat;
    const double r = residual.norm();
    const CVec e_hat = residual / r;  // r > 0 here, otherwise MRT already met S

    const double t0 = std::atan2(r, c_abs);
    const double ratio = std::min(1.0, std::sqrt(S / (g_norm2 * P)));
    const double t = std::max(0.0, t0 - std::acos(ratio));
    const double alpha = std::sqrt(P) * std::cos(t);

    // Split what is left between e_hat and the dedicated sensing covariance;
    // the gain is concave in beta with maximizer r alpha / |c|.
    const double rest = std::max(0.0, P - alpha * alpha);
    double beta = std::sqrt(rest);
    if (c_abs > 0.0)
        beta = std::min(beta, r * alpha / c_abs);
    const double p = std::max(0.0, rest - beta * beta);

    const cplx phase = c_abs > 0.0 ? c / c_abs : cplx{1.0, 0.0};
    CVec w = (alpha * phase) * h_hat + beta * e_hat;
    return finish(std::move(w), p);
}

struct ComputeAllocation {
    std::vector<double> f;
    double phi = kInfiniteLatency;
};

// min over f of max_m (D_m/R_m + beta D_m / f_m), sum f <= F, by bisection on
// the epigraph level. The returned allocation spends the whole budget.
inline ComputeAllocation allocate_computation(std::span<const double> rates, std::span<const double> task_bits,
                                              double cycles_per_bit, double bs_compute, double rel_tol = 1e-12) {
    if (rates.size() != task_bits.size() || rates.empty())
        throw DomainError("allocation: rates and task sizes must be non-empty and of equal length");
    if (!(bs_compute > 0.0) || !(cycles_per_bit > 0.0))
        throw DomainError("allocation: compute budget and cycles/bit must be positive");

    const std::size_t M = rates.size();
    ComputeAllocation out;
    out.f.assign(M, 0.0);
    if (std::any_of(rates.begin(), rates.end(), [](double r) { return !(r > 0.0); }))
        return out;

    std::vector<double> tran(M), load(M);
    double tran_max = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        tran[m] = task_bits[m] / rates[m];
        load[m] = cycles_per_bit * task_bits[m];
        tran_max = std::max(tran_max, tran[m]);
    }

    auto demand = [&](double level) {
        double total = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            const double slack = level - tran[m];
            if (!(slack > 0.0))
                return kInfiniteLatency;
            total += load[m] / slack;
        }
        return total;
    };

    double lo = tran_max * (1.0 + 1e-12);
    double hi = 2.0 * lo;
    while (demand(hi) > bs_compute) {
        lo = hi;
        hi *= 2.0;
    }
    if (demand(lo) <= bs_compute)
        hi = lo;
    for (int it = 0; it < 400 && hi - lo > rel_tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (demand(mid) <= bs_compute)
            hi = mid;
        else
            lo = mid;
    }

    double total = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        out.f[m] = load[m] / (hi - tran[m]);
        total += out.f[m];
    }
    const double scale = bs_compute / total;
    out.phi = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        out.f[m] *= scale;
        out.phi = std::max(out.phi, tran[m] + load[m] / out.f[m]);
    }
    return out;
}

inline InnerSolution solve_inner(const ScenarioConfig& scenario, const ChannelRealization& channels) {
    const std::size_t M = scenario.num_aavs;
    if (channels.h.size() != M || channels.target_steering.size() != M)
        throw DomainError("solve_inner: channel realization does not match scenario");

    InnerSolution sol;
    sol.w.reserve(M);
    sol.sensing_power.reserve(M);
    sol.rate.reserve(M);
    sol.sensing_feasible.reserve(M);
    for (std::size_t m = 0; m < M; ++m) {
        auto beam = solve_beamforming_per_aav(channels.h[m], channels.target_steering[m], scenario.max_power[m],
                                              scenario.target_distance(m), scenario.gamma_min,
                                              scenario.noise_power);
        sol.rate.push_back(rate_from_snr(beam.snr, scenario.bandwidth, M));
        sol.w.push_back(std::move(beam.w));
        sol.sensing_power.push_back(beam.sensing_power);
        sol.sensing_feasible.push_back(beam.feasible);
    }

    auto alloc = allocate_computation(sol.rate, scenario.task_bits, scenario.cycles_per_bit, scenario.bs_compute);
    sol.f = std::move(alloc.f);
    sol.t_tran.resize(M);
    sol.t_comp.resize(M);
    sol.latency.resize(M);
    for (std::size_t m = 0; m < M; ++m) {
        const auto t = latency_components(scenario.task_bits[m], sol.rate[m], sol.f[m], scenario.cycles_per_bit);
        sol.t_tran[m] = t.tran;
        sol.t_comp[m] = t.comp;
        sol.latency[m] = t.total;
    }
    sol.phi = system_objective(sol);
    return sol;
}

inline InnerSolution solve_inner(const ScenarioConfig& scenario, const AntennaLayout& layout, const NlosDraws& nlos) {
    return solve_inner(scenario, generate_channel(scenario, layout, nlos));
}

// Principal eigenpair sqrt(lambda_1) u_1 of a Hermitian PSD matrix.
inline CVec extract_rank_one(const CMat& W) {
    if (W.rows() != W.cols() || W.rows() == 0)
        throw DomainError("extract_rank_one: matrix must be square and non-empty");
    Eigen::SelfAdjointEigenSolver<CMat> eig(W);
    if (eig.info() != Eigen::Success)
        throw DomainError("extract_rank_one: eigen-decomposition failed");
    const auto& values = eig.eigenvalues();  // ascending
    if (values[0] < -1e-6)
        throw DomainError("extract_rank_one: not PSD");
    const Eigen::Index top = values.size() - 1;
    return std::sqrt(std::max(0.0, values[top])) * eig.eigenvectors().col(top);
}

} // namespace maiscc
