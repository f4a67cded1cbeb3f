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

// Brute-force references for the inner layer. Slow on purpose; they search
// grids directly over the problem variables and share no code with the
// closed-form solver beyond the basic metric functions.

#pragma once

#include "maiscc/geometry_channel.hpp"
#include "maiscc/signal_metrics.hpp"
#include "maiscc/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace maiscc::oracle {

struct GridOptions {
    std::size_t resolution = 128;        // alpha grid points
    std::size_t inner_resolution = 64;   // split and phase points on the coarse inner grid
    std::size_t inner_levels = 20;       // zoom levels of the inner (split, phase) search
    std::size_t refine_levels = 40;      // zoom levels on alpha
};

struct BeamOracleResult {
    double snr = 0.0;
    bool feasible = false;
    double alpha = 0.0;
    double split = 0.0;
    double phase = 0.0;
};

namespace detail {

inline std::vector<double> axis(double lo, double hi, std::size_t points) {
    std::vector<double> v(points);
    if (points == 1) {
        v[0] = 0.5 * (lo + hi);
        return v;
    }
    for (std::size_t i = 0; i < points; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return v;
}

} // namespace detail

// Grid search over w = alpha h_hat + sqrt(split (P - alpha^2)) e^{j phase} e_hat
// with sensing power (1 - split)(P - alpha^2). The SNR depends on alpha only,
// so the search is nested: for each alpha the best reachable gain over
// (split, phase) comes from a grid with zoom, and alpha itself is scanned on
// a grid and then zoomed into the last feasible cell. Incumbents are never
// discarded, so refinement only improves the result.
inline BeamOracleResult beamforming_grid(const CVec& h, const CVec& g, double max_power, double target_distance,
                                         double gamma_min, double noise_power, const GridOptions& opt = {}) {
    const double P = max_power;
    const double S = target_distance * target_distance * gamma_min;
    const double n_ant = static_cast<double>(g.size());
    BeamOracleResult best;
    best.feasible = P * n_ant >= S;
    if (!best.feasible)
        return best;

    const double h_norm = h.norm();
    if (h_norm == 0.0)
        return best;  // SNR is zero for every beam
    const CVec h_hat = h / h_norm;

    // Orthonormal partner of h_hat inside span{h, g}; any unit vector
    // orthogonal to h_hat works when g is parallel to h.
    CVec e_hat = g - h_hat * h_hat.dot(g);
    if (e_hat.norm() <= 1e-12 * g.norm()) {
        e_hat = CVec::Zero(g.size());
        if (g.size() > 1) {
            e_hat[1] = 1.0;
            e_hat -= h_hat * h_hat.dot(e_hat);
        }
    }
    const bool has_second = e_hat.norm() > 0.0;
    if (has_second)
        e_hat.normalize();

    const cplx gh = g.dot(h_hat);  // g^H h_hat
    const cplx ge = has_second ? g.dot(e_hat) : cplx{};
    const double g_norm2 = g.squaredNorm();
    const double slack = 1e-12 * std::max(1.0, S);

    auto gain_at = [&](double alpha, double split, double phase) {
        const double rest = std::max(0.0, P - alpha * alpha);
        const double beta = std::sqrt(split * rest);
        const double p = (1.0 - split) * rest;
        return std::norm(alpha * gh + beta * std::polar(1.0, phase) * ge) + p * g_norm2;
    };

    struct Inner {
        double gain = -1.0;
        double split = 0.0;
        double phase = 0.0;
    };
    // Best gain over (split, phase) at fixed alpha.
    auto best_gain = [&](double alpha) {
        Inner in;
        auto scan = [&](const std::vector<double>& splits, const std::vector<double>& phases) {
            for (double split : splits)
                for (double phase : phases) {
                    const double v = gain_at(alpha, split, phase);
                    if (v > in.gain)
                        in = {v, split, phase};
                }
        };
        const std::size_t R = std::max<std::size_t>(opt.inner_resolution, 4);
        std::vector<double> phases(R);
        for (std::size_t k = 0; k < R; ++k)
            phases[k] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(R);
        scan(detail::axis(0.0, 1.0, R), phases);
        double step_s = 1.0 / static_cast<double>(R - 1);
        double step_p = 2.0 * kPi / static_cast<double>(R);
        for (std::size_t level = 0; level < opt.inner_levels; ++level) {
            scan(detail::axis(std::max(0.0, in.split - 4.0 * step_s), std::min(1.0, in.split + 4.0 * step_s), 17),
                 detail::axis(in.phase - 4.0 * step_p, in.phase + 4.0 * step_p, 17));
            step_s *= 0.5;
            step_p *= 0.5;
        }
        return in;
    };

    // Coarse alpha scan: keep the largest feasible alpha (no monotonicity assumed).
    const double a_max = std::sqrt(P);
    const std::size_t R = std::max<std::size_t>(opt.resolution, 2);
    const auto alphas = detail::axis(0.0, a_max, R);
    double best_alpha = -1.0;
    double next_alpha = a_max;
    Inner incumbent;
    for (std::size_t i = 0; i < R; ++i) {
        const auto in = best_gain(alphas[i]);
        if (in.gain + slack >= S) {
            best_alpha = alphas[i];
            incumbent = in;
            next_alpha = i + 1 < R ? alphas[i + 1] : alphas[i];
        }
    }
    if (best_alpha < 0.0) {
        best.feasible = false;  // no grid point meets the constraint
        return best;
    }

    // Zoom into [best_alpha, next_alpha].
    for (std::size_t level = 0; level < opt.refine_levels && next_alpha > best_alpha; ++level) {
        const auto cell = detail::axis(best_alpha, next_alpha, 9);
        double hi = cell[1];
        for (std::size_t i = 1; i < cell.size(); ++i) {
            const auto in = best_gain(cell[i]);
            if (in.gain + slack >= S) {
                best_alpha = cell[i];
                incumbent = in;
                hi = i + 1 < cell.size() ? cell[i + 1] : cell[i];
            }
        }
        next_alpha = hi;
    }

    best.alpha = best_alpha;
    best.split = incumbent.split;
    best.phase = incumbent.phase;
    const CVec w = best.alpha * h_hat;
    best.snr = std::norm(h.dot(w)) / noise_power;
    return best;
}

// Min of the max latency over allocations with sum f = F (M <= 3), by a grid
// on the simplex with zoom refinement around the incumbent.
inline double allocation_grid(std::span<const double> rates, std::span<const double> task_bits,
                              double cycles_per_bit, double bs_compute, std::size_t resolution = 100000,
                              std::size_t refine_levels = 30) {
    const std::size_t M = rates.size();
    if (M == 0 || M > 3 || task_bits.size() != M)
        throw DomainError("allocation oracle: supports 1 to 3 AAVs");
    if (std::any_of(rates.begin(), rates.end(), [](double r) { return !(r > 0.0); }))
        return kInfiniteLatency;

    const double F = bs_compute;
    auto objective = [&](const std::array<double, 3>& f) {
        double worst = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            if (!(f[m] > 0.0))
                return kInfiniteLatency;
            worst = std::max(worst, task_bits[m] / rates[m] + cycles_per_bit * task_bits[m] / f[m]);
        }
        return worst;
    };

    if (M == 1)
        return objective({F, 0.0, 0.0});

    double best = kInfiniteLatency;
    std::array<double, 3> arg{};

    if (M == 2) {
        double step = F / static_cast<double>(resolution);
        for (std::size_t i = 1; i < resolution; ++i) {
            const double f1 = step * static_cast<double>(i);
            const double v = objective({f1, F - f1, 0.0});
            if (v < best) {
                best = v;
                arg = {f1, F - f1, 0.0};
            }
        }
        for (std::size_t level = 0; level < refine_levels; ++level) {
            const std::size_t Q = 41;
            const double lo = std::max(0.0, arg[0] - 2.0 * step);
            const double hi = std::min(F, arg[0] + 2.0 * step);
            for (std::size_t i = 0; i < Q; ++i) {
                const double f1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(Q - 1);
                const double v = objective({f1, F - f1, 0.0});
                if (v < best) {
                    best = v;
                    arg = {f1, F - f1, 0.0};
                }
            }
            step *= 4.0 / static_cast<double>(Q - 1);
        }
        return best;
    }

    // M == 3: two free coordinates, f3 = F - f1 - f2.
    const std::size_t K = std::min<std::size_t>(resolution, 600);
    double step = F / static_cast<double>(K);
    for (std::size_t i = 1; i < K; ++i)
        for (std::size_t j = 1; i + j < K; ++j) {
            const double f1 = step * static_cast<double>(i);
            const double f2 = step * static_cast<double>(j);
            const double v = objective({f1, f2, F - f1 - f2});
            if (v < best) {
                best = v;
                arg = {f1, f2, F - f1 - f2};
            }
        }
    for (std::size_t level = 0; level < refine_levels; ++level) {
        const std::size_t Q = 61;
        const double lo1 = std::max(0.0, arg[0] - 3.0 * step), hi1 = std::min(F, arg[0] + 3.0 * step);
        const double lo2 = std::max(0.0, arg[1] - 3.0 * step), hi2 = std::min(F, arg[1] + 3.0 * step);
        for (std::size_t i = 0; i < Q; ++i)
            for (std::size_t j = 0; j < Q; ++j) {
                const double f1 = lo1 + (hi1 - lo1) * static_cast<double>(i) / static_cast<double>(Q - 1);
                const double f2 = lo2 + (hi2 - lo2) * static_cast<double>(j) / static_cast<double>(Q - 1);
                const double f3 = F - f1 - f2;
                if (f3 <= 0.0)
                    continue;
                const double v = objective({f1, f2, f3});
                if (v < best) {
                    best = v;
                    arg = {f1, f2, f3};
                }
            }
        step *= 6.0 / static_cast<double>(Q - 1);
    }
    return best;
}

struct JointOracleResult {
    double phi = kInfiniteLatency;
    std::vector<bool> sensing_feasible;
    std::vector<double> snr;
};

// Per-AAV beam grid composed with the allocation grid (M <= 2, N <= 3 intended).
inline JointOracleResult joint_small(const ScenarioConfig& scenario, const ChannelRealization& channels,
                                     const GridOptions& opt = {}) {
    const std::size_t M = scenario.num_aavs;
    if (M > 3)
        throw DomainError("joint oracle: supports at most 3 AAVs");
    JointOracleResult out;
    std::vector<double> rates(M);
    for (std::size_t m = 0; m < M; ++m) {
        const auto beam = beamforming_grid(channels.h[m], channels.target_steering[m], scenario.max_power[m],
                                           scenario.target_distance(m), scenario.gamma_min, scenario.noise_power,
                                           opt);
        out.sensing_feasible.push_back(beam.feasible);
        out.snr.push_back(beam.snr);
        rates[m] = rate_from_snr(beam.snr, scenario.bandwidth, M);
    }
    out.phi = allocation_grid(rates, scenario.task_bits, scenario.cycles_per_bit, scenario.bs_compute);
    return out;
}

} // namespace maiscc::oracle
