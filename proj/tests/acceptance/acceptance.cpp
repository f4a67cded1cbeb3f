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

// Acceptance suite: seven criteria, one PASS/FAIL line each. Exit status is
// nonzero if any criterion fails.

#include "maiscc/maiscc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace maiscc;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = true;
    std::string detail;
};

// Every solution emitted by criteria 4-6, audited by criterion 7.
struct Emitted {
    ScenarioConfig scenario;
    NlosDraws nlos;
    AntennaLayout layout;
    InnerSolution solution;
    std::string origin;
};
std::vector<Emitted> g_emitted;

void record(const ScenarioInstance& inst, const SchemeOutcome& out, std::string origin) {
    g_emitted.push_back({inst.config, inst.nlos, out.layout, out.solution, std::move(origin)});
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int run_criterion(const char* id, const char* title, double limit_seconds, const std::function<Verdict()>& body) {
    const auto start = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > limit_seconds) {
        v.pass = false;
        v.detail += "; runtime " + fmt(secs) + " s exceeds " + fmt(limit_seconds) + " s";
    }
    std::printf("[%s] %s %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
    std::fflush(stdout);
    return v.pass ? 0 : 1;
}

Verdict c1_beamforming() {
    const auto rep = validation::check_beamforming(1001, 200, 1e-3);
    return {rep.failed == 0, std::to_string(rep.passed) + "/200 within 1e-3, worst " + fmt(rep.worst)};
}

Verdict c2_allocation() {
    const auto rep = validation::check_allocation(1002, 200, 1e-4);
    double worst_spread = 0.0, worst_budget = 0.0;
    for (std::size_t k = 0; k < 200; ++k) {
        RandomStream rng(derive_seed(1002, StreamTag::Validation, {2, k}));
        const auto c = validation::random_allocation_case(rng, 2 + k % 2);
        const auto a = allocate_computation(c.rates, c.task_bits, c.cycles_per_bit, c.bs_compute);
        double lo = kInfiniteLatency, hi = 0.0, total = 0.0;
        for (std::size_t m = 0; m < c.rates.size(); ++m) {
            const double T = latency_components(c.task_bits[m], c.rates[m], a.f[m], c.cycles_per_bit).total;
            lo = std::min(lo, T);
            hi = std::max(hi, T);
            total += a.f[m];
        }
        worst_spread = std::max(worst_spread, (hi - lo) / hi);
        worst_budget = std::max(worst_budget, std::abs(total - c.bs_compute) / c.bs_compute);
    }
    const bool ok = rep.failed == 0 && worst_spread <= 1e-6 && worst_budget <= 1e-6;
    return {ok, std::to_string(rep.passed) + "/200 within 1e-4 (worst " + fmt(rep.worst) +
                    "), latency spread " + fmt(worst_spread) + ", budget gap " + fmt(worst_budget)};
}

Verdict c3_joint() {
    const auto rep = validation::check_joint(1003, 50, 1e-2);
    return {rep.failed == 0, std::to_string(rep.passed) + "/50 within 1e-2, worst " + fmt(rep.worst)};
}

// Plateau: the last 20% of iterations improve gbest by at most 0.1%.
bool plateaued(const std::vector<double>& trace) {
    const std::size_t imax = trace.size() - 1;
    const std::size_t tail = (imax + 4) / 5;
    const double last = trace[imax];
    return trace[imax - tail] - last <= 1e-3 * last;
}

Verdict c4_pso() {
    PsoParams p;
    p.particles = 30;
    p.iterations = 50;
    std::size_t monotone = 0, identical = 0, plateau = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = build_scenario(seed, ScenarioSettings{});
        const auto opt_seed = derive_seed(seed, StreamTag::Optimizer);
        p.threads = 1;
        const auto single = evaluate_scheme(inst, Scheme::MA, p, opt_seed);
        p.threads = 4;
        const auto multi = evaluate_scheme(inst, Scheme::MA, p, opt_seed);
        record(inst, single, "C4 seed " + std::to_string(seed));
        const auto& t = single.trace;
        bool mono = t.size() == p.iterations + 1;
        for (std::size_t i = 1; i < t.size(); ++i)
            mono = mono && t[i] <= t[i - 1];
        monotone += mono;
        identical += t == multi.trace && single.layout.coords == multi.layout.coords;
        plateau += plateaued(t);
    }
    // Informational only: the same instances at the default budget (100 x 200).
    std::size_t plateau_default = 0;
    PsoParams d;
    d.threads = 4;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = build_scenario(seed, ScenarioSettings{});
        plateau_default += plateaued(evaluate_scheme(inst, Scheme::MA, d, derive_seed(seed, StreamTag::Optimizer)).trace);
    }
    const bool ok = monotone == 10 && identical == 10 && plateau >= 8;
    return {ok, "non-increasing " + std::to_string(monotone) + "/10, thread-identical " + std::to_string(identical) +
                    "/10, plateau " + std::to_string(plateau) + "/10 (at 100x200, not scored: " +
                    std::to_string(plateau_default) + "/10)"};
}

Verdict c5_dominance() {
    const PsoParams p;  // library defaults: 100 particles, 200 iterations
    std::size_t wins = 0;
    double mean_gain_fpa = 0.0, mean_gain_rpa = 0.0;
    for (std::size_t k = 0; k < 20; ++k) {
        const auto inst = build_scenario(instance_seed(5005, k), ScenarioSettings{});
        const auto ma = evaluate_scheme(inst, Scheme::MA, p, optimizer_seed(5005, 0, k));
        const auto fpa = evaluate_scheme(inst, Scheme::FPA, p, 0);
        const auto rpa = evaluate_scheme(inst, Scheme::RPA, p, 0);
        record(inst, ma, "C5 ma " + std::to_string(k));
        record(inst, fpa, "C5 fpa " + std::to_string(k));
        record(inst, rpa, "C5 rpa " + std::to_string(k));
        wins += ma.fitness <= fpa.fitness && ma.fitness <= rpa.fitness;
        mean_gain_fpa += (fpa.fitness - ma.fitness) / fpa.fitness / 20.0;
        mean_gain_rpa += (rpa.fitness - ma.fitness) / rpa.fitness / 20.0;
    }
    return {wins == 20, "MA <= FPA and RPA on " + std::to_string(wins) + "/20, mean reduction vs FPA " +
                            fmt(100 * mean_gain_fpa) + "%, vs RPA " + fmt(100 * mean_gain_rpa) + "%"};
}

// phi of a fixed layout along a scalar sweep; true if non-increasing.
bool fixed_layout_monotone(const ScenarioInstance& inst, const AntennaLayout& layout, SweepVariable variable,
                           const std::vector<double>& values) {
    double last = kInfiniteLatency;
    for (double v : values) {
        auto c = inst.config;
        if (variable == SweepVariable::BsCompute)
            c.bs_compute = v;
        else
            std::fill(c.max_power.begin(), c.max_power.end(), v);
        const double phi = solve_inner(c, layout, inst.nlos).phi;
        if (phi > last)
            return false;
        last = phi;
    }
    return true;
}

Verdict c6_trends() {
    const PsoParams p;
    std::ostringstream detail;
    bool ok = true;

    // Exact monotonicity at fixed layout and channels.
    const std::vector<double> fbs{2.5e9, 5e9, 1e10, 2e10, 4e10};
    const std::vector<double> pmax{0.5, 0.75, 1.0, 1.5, 2.0, 4.0};
    std::size_t checked = 0, monotone = 0;
    for (std::size_t k = 0; k < 20; ++k) {
        const auto inst = build_scenario(instance_seed(6006, k), ScenarioSettings{});
        const auto ma = evaluate_scheme(inst, Scheme::MA, p, optimizer_seed(6006, 0, k));
        for (const auto& layout : {fpa_layout(inst.config), rpa_layout(inst.config), ma.layout}) {
            for (auto var : {SweepVariable::BsCompute, SweepVariable::MaxPower}) {
                ++checked;
                monotone += fixed_layout_monotone(inst, layout, var, var == SweepVariable::BsCompute ? fbs : pmax);
            }
        }
    }
    ok = ok && monotone == checked;
    detail << "fixed-layout f_bs_max/P_max sweeps monotone " << monotone << "/" << checked;

    // Statistical trends in N and M with matched instance seeds.
    auto mean_ma = [&](SweepVariable var, double value, std::size_t value_index) {
        const auto settings = apply_sweep_value(ScenarioSettings{}, var, value);
        double sum = 0.0;
        for (std::size_t k = 0; k < 20; ++k) {
            const auto inst = build_scenario(instance_seed(6060, k), settings);
            const auto out = evaluate_scheme(inst, Scheme::MA, p, optimizer_seed(6060, value_index, k));
            record(inst, out, "C6 " + std::string(to_string(var)) + "=" + fmt(value) + " #" + std::to_string(k));
            sum += out.solution.phi;
        }
        return sum / 20.0;
    };

    std::vector<double> by_n;
    for (std::size_t i = 0; i < 4; ++i)
        by_n.push_back(mean_ma(SweepVariable::Antennas, 2.0 + 2.0 * static_cast<double>(i), i));
    const bool n_ok = std::is_sorted(by_n.rbegin(), by_n.rend());
    detail << "; mean phi vs N=2,4,6,8: " << fmt(by_n[0]) << ", " << fmt(by_n[1]) << ", " << fmt(by_n[2]) << ", "
           << fmt(by_n[3]) << (n_ok ? " (non-increasing)" : " (NOT non-increasing)");

    std::vector<double> by_m;
    for (std::size_t i = 0; i < 3; ++i)
        by_m.push_back(mean_ma(SweepVariable::Aavs, 2.0 + static_cast<double>(i), i));
    const bool m_ok = std::is_sorted(by_m.begin(), by_m.end());
    detail << "; mean phi vs M=2,3,4: " << fmt(by_m[0]) << ", " << fmt(by_m[1]) << ", " << fmt(by_m[2])
           << (m_ok ? " (non-decreasing)" : " (NOT non-decreasing)");

    return {ok && n_ok && m_ok, detail.str()};
}

Verdict c7_constraints() {
    std::size_t violations = 0;
    std::string first;
    auto flag = [&](const Emitted& e, const std::string& what) {
        if (violations++ == 0)
            first = e.origin + ": " + what;
    };

    for (const auto& e : g_emitted) {
        const auto& c = e.scenario;
        const auto& s = e.solution;
        const auto ch = generate_channel(c, e.layout, e.nlos);
        double total_f = 0.0;
        for (std::size_t m = 0; m < c.num_aavs; ++m) {
            const double power = s.w[m].squaredNorm() + s.sensing_power[m];
            if (power > c.max_power[m] + 1e-6 * c.max_power[m])
                flag(e, "power budget exceeded");
            if (s.sensing_power[m] < 0.0)
                flag(e, "negative sensing power");
            const double S = c.sensing_threshold(m);
            const double gain = beampattern_gain(s.w[m], s.sensing_power[m], ch.target_steering[m]);
            if (gain < S * (1.0 - 1e-6))
                flag(e, "sensing gain below threshold");
            if (s.f[m] < 0.0)
                flag(e, "negative compute share");
            total_f += s.f[m];
            for (const auto& x : ch.target_steering[m])
                if (std::abs(std::abs(x) - 1.0) > 1e-12)
                    flag(e, "steering entry not unit modulus");
        }
        if (total_f > c.bs_compute * (1.0 + 1e-6))
            flag(e, "compute budget exceeded");
        if (!within_region(e.layout, c.region_size))
            flag(e, "antenna outside region");
        if (count_spacing_violations(e.layout, c.min_spacing) != 0)
            flag(e, "spacing violated");
    }

    // Randomized boundary cases for the analytic sensing condition.
    std::size_t boundary = 0, mismatches = 0;
    RandomStream rng(derive_seed(7007, StreamTag::Validation));
    for (int k = 0; k < 2000; ++k) {
        const std::size_t N = 1 + static_cast<std::size_t>(k % 8);
        const double P = rng.uniform(0.1, 4.0);
        const double d = rng.uniform(10.0, 200.0);
        const double nudge = 1.0 + static_cast<double>(k % 7 - 3) * 1e-15;
        const double gamma = P * static_cast<double>(N) / (d * d) * nudge;
        const auto g = validation::random_steering(rng, N);
        CVec h(static_cast<Eigen::Index>(N));
        for (auto& x : h)
            x = rng.complex_normal() * 1e-5;
        const bool analytic = sensing_feasibility(P, N, d, gamma);
        const bool solver = solve_beamforming_per_aav(h, g, P, d, gamma, 1e-13).feasible;
        mismatches += analytic != solver;
        ++boundary;
    }
    if (mismatches)
        violations += mismatches;

    std::string detail = std::to_string(g_emitted.size()) + " emitted solutions audited, " +
                         std::to_string(boundary) + " boundary feasibility cases, " + std::to_string(violations) +
                         " violations";
    if (!first.empty())
        detail += " (first: " + first + ")";
    if (mismatches)
        detail += ", " + std::to_string(mismatches) + " feasibility mismatches";
    return {violations == 0 && !g_emitted.empty(), detail};
}

} // namespace

int main() {
    int failed = 0;
    failed += run_criterion("C1", "beamforming oracle agreement", 120, c1_beamforming);
    failed += run_criterion("C2", "allocation oracle agreement", 60, c2_allocation);
    failed += run_criterion("C3", "decoupling exactness", 300, c3_joint);
    failed += run_criterion("C4", "PSO contract", 600, c4_pso);
    failed += run_criterion("C5", "baseline dominance", 1200, c5_dominance);
    failed += run_criterion("C6", "trend reproduction", 1800, c6_trends);
    failed += run_criterion("C7", "constraint suite", 600, c7_constraints);
    std::printf("%d of 7 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
