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

// maiscc command-line entry point.
//
//   maiscc run         single-instance optimization (MA/FPA/RPA)
//   maiscc sweep       parameter sweep to CSV
//   maiscc convergence gbest fitness per PSO iteration
//   maiscc baseline    FPA and RPA evaluation
//   maiscc validate    oracle cross-checks
//
// Exit codes: 0 success, 1 domain/config error, 2 usage error.

#include "maiscc/config.hpp"
#include "maiscc/maiscc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace maiscc;
using json = nlohmann::json;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string echo;
    std::optional<std::size_t> particles;
    std::optional<std::size_t> iterations;
    std::optional<std::size_t> instances;
    std::optional<std::size_t> threads;
    std::string scheme;
};

struct Resolved {
    ConfigFile cfg;
    std::uint64_t seed = 0;
};

Resolved resolve(const Options& opt) {
    Resolved r;
    if (!opt.config_path.empty())
        r.cfg = parse_config(opt.config_path);
    r.seed = opt.seed.value_or(r.cfg.seed);
    r.cfg.seed = r.seed;
    if (opt.particles)
        r.cfg.pso.particles = *opt.particles;
    if (opt.iterations)
        r.cfg.pso.iterations = *opt.iterations;
    if (opt.threads)
        r.cfg.pso.threads = *opt.threads;
    if (opt.instances)
        r.cfg.sweep.instances = *opt.instances;
    if (!opt.scheme.empty())
        r.cfg.sweep.schemes = {*parse_scheme(opt.scheme)};
    // CLI overrides win over sweep-level PSO overrides.
    if (opt.particles)
        r.cfg.sweep.particles.reset();
    if (opt.iterations)
        r.cfg.sweep.iterations.reset();
    r.cfg.pso.validate();
    if (!opt.echo.empty())
        write_text(opt.echo, echo_config(r.cfg));
    return r;
}

json to_json(const AntennaLayout& layout) {
    json arrays = json::array();
    for (const auto& array : layout.coords) {
        json pts = json::array();
        for (const auto& p : array)
            pts.push_back({p.x, p.y});
        arrays.push_back(pts);
    }
    return arrays;
}

json to_json(const InnerSolution& sol) {
    json aavs = json::array();
    for (std::size_t m = 0; m < sol.w.size(); ++m) {
        json w = json::array();
        for (const auto& x : sol.w[m])
            w.push_back({x.real(), x.imag()});
        aavs.push_back({{"w", w},
                        {"sensing_power", sol.sensing_power[m]},
                        {"compute", sol.f[m]},
                        {"rate", sol.rate[m]},
                        {"t_tran", sol.t_tran[m]},
                        {"t_comp", sol.t_comp[m]},
                        {"latency", sol.latency[m]},
                        {"sensing_feasible", static_cast<bool>(sol.sensing_feasible[m])}});
    }
    return {{"phi", format_number(sol.phi)}, {"aavs", aavs}};
}

int cmd_run(const Options& opt) {
    const auto r = resolve(opt);
    const auto scheme = opt.scheme.empty() ? Scheme::MA : *parse_scheme(opt.scheme);
    const auto inst = build_scenario(r.seed, r.cfg.scenario);
    const auto out = evaluate_scheme(inst, scheme, r.cfg.pso, derive_seed(r.seed, StreamTag::Optimizer));
    std::cout << "scheme " << to_string(scheme) << "  phi " << format_number(out.solution.phi) << " s  feasible "
              << (out.feasible ? "yes" : "no") << "\n";
    for (std::size_t m = 0; m < out.solution.latency.size(); ++m)
        std::cout << "  aav " << m << ": T_tran " << format_number(out.solution.t_tran[m]) << " s, T_comp "
                  << format_number(out.solution.t_comp[m]) << " s\n";
    if (!opt.out.empty()) {
        json doc = {{"scheme", std::string(to_string(scheme))},
                    {"seed", r.seed},
                    {"fitness", format_number(out.fitness)},
                    {"feasible", out.feasible},
                    {"layout", to_json(out.layout)},
                    {"solution", to_json(out.solution)}};
        write_text(opt.out, doc.dump(2) + "\n");
    }
    return out.feasible ? 0 : 1;
}

int cmd_sweep(const Options& opt) {
    const auto r = resolve(opt);
    const auto table = run_sweep(r.cfg.sweep, r.cfg.scenario, r.cfg.pso, r.seed);
    const std::string out = opt.out.empty() ? "sweep.csv" : opt.out;
    emit_csv(table.rows, out);
    std::filesystem::path summary_path(out);
    summary_path.replace_extension(".summary.csv");
    write_text(summary_path, summary_csv(table.variable, table.summary));
    std::size_t failed = 0;
    for (const auto& row : table.rows)
        if (!row.error.empty()) {
            ++failed;
            std::cerr << "cell " << row.variable << "=" << format_number(row.value) << " " << to_string(row.scheme)
                      << " #" << row.instance << " failed: " << row.error << "\n";
        }
    for (const auto& s : table.summary)
        std::cout << table.variable << "=" << format_number(s.value) << "  " << to_string(s.scheme) << "  mean phi "
                  << format_number(s.mean_phi) << " s  std " << format_number(s.std_phi) << "  (n=" << s.count
                  << ")\n";
    std::cout << "wrote " << table.rows.size() << " rows to " << out << "\n";
    return failed == 0 ? 0 : 1;
}

int cmd_convergence(const Options& opt) {
    const auto r = resolve(opt);
    const auto inst = build_scenario(r.seed, r.cfg.scenario);
    const auto trace = convergence_trace(inst, r.cfg.pso, derive_seed(r.seed, StreamTag::Optimizer));
    const auto csv = trace_csv(trace);
    if (opt.out.empty())
        std::cout << csv;
    else
        write_text(opt.out, csv);
    return 0;
}

int cmd_baseline(const Options& opt) {
    auto r = resolve(opt);
    const std::size_t instances = opt.instances.value_or(1);
    std::vector<SweepRow> rows;
    for (std::size_t k = 0; k < instances; ++k) {
        const auto seed = instances == 1 ? r.seed : instance_seed(r.seed, k);
        const auto inst = build_scenario(seed, r.cfg.scenario);
        for (Scheme scheme : {Scheme::FPA, Scheme::RPA}) {
            if (!opt.scheme.empty() && *parse_scheme(opt.scheme) != scheme)
                continue;
            const auto out = evaluate_scheme(inst, scheme, r.cfg.pso, 0);
            SweepRow row;
            row.variable = "none";
            row.scheme = scheme;
            row.instance = k;
            row.seed = seed;
            row.phi = out.solution.phi;
            row.t_tran_max = *std::max_element(out.solution.t_tran.begin(), out.solution.t_tran.end());
            row.t_comp_max = *std::max_element(out.solution.t_comp.begin(), out.solution.t_comp.end());
            row.feasible = out.feasible;
            std::cout << to_string(scheme) << " #" << k << "  phi " << format_number(row.phi) << " s\n";
            rows.push_back(std::move(row));
        }
    }
    if (!opt.out.empty())
        emit_csv(rows, opt.out);
    return 0;
}

int cmd_validate(const Options& opt) {
    const auto seed = opt.seed.value_or(0);
    const std::size_t scale = opt.instances.value_or(1);
    const validation::CheckReport reports[] = {
        validation::check_beamforming(seed, 200 * scale),
        validation::check_allocation(seed, 200 * scale),
        validation::check_joint(seed, 50 * scale),
    };
    std::size_t failed = 0;
    for (const auto& rep : reports) {
        std::cout << (rep.failed == 0 ? "[PASS] " : "[FAIL] ") << rep.name << ": " << rep.passed << " passed, "
                  << rep.failed << " failed, worst relative deviation " << format_number(rep.worst) << "\n";
        failed += rep.failed;
    }
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maiscc: movable-antenna multi-AAV latency optimization"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "YAML config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "master seed (overrides the config)");
        sub->add_option("--out", opt.out, "output path");
        sub->add_option("--echo", opt.echo, "write the effective config to this path");
        sub->add_option("--particles", opt.particles, "PSO swarm size")->check(CLI::PositiveNumber);
        sub->add_option("--iters", opt.iterations, "PSO iterations")->check(CLI::NonNegativeNumber);
        sub->add_option("--scheme", opt.scheme, "ma | fpa | rpa")->check(CLI::IsMember({"ma", "fpa", "rpa"}));
        sub->add_option("--instances", opt.instances, "Monte-Carlo instances")->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "worker threads for fitness evaluation")
            ->check(CLI::PositiveNumber);
    };

    auto* run = app.add_subcommand("run", "optimize one scenario instance and report the max latency");
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write CSV");
    auto* convergence = app.add_subcommand("convergence", "write the gbest fitness trace as CSV");
    auto* baseline = app.add_subcommand("baseline", "evaluate the FPA and RPA baselines");
    auto* validate = app.add_subcommand("validate", "cross-check the inner solver against the oracles");
    for (auto* sub : {run, sweep, convergence, baseline, validate})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        if (argc <= 1)
            std::cerr << app.help();
        return 2;
    }

    try {
        if (*run)
            return cmd_run(opt);
        if (*sweep)
            return cmd_sweep(opt);
        if (*convergence)
            return cmd_convergence(opt);
        if (*baseline)
            return cmd_baseline(opt);
        if (*validate)
            return cmd_validate(opt);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
