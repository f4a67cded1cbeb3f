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

#include "maiscc/harness.hpp"
#include "maiscc/types.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>

namespace maiscc {

// 17 significant digits; infinities are written as "inf".
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr const char* kSweepCsvHeader =
    "sweep_variable,value,scheme,instance,seed,phi_seconds,t_tran_max,t_comp_max,feasible";

inline std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += r.variable;
        out += ',' + format_number(r.value);
        out += ',' + std::string(to_string(r.scheme));
        out += ',' + std::to_string(r.instance);
        out += ',' + std::to_string(r.seed);
        out += ',' + format_number(r.phi);
        out += ',' + format_number(r.t_tran_max);
        out += ',' + format_number(r.t_comp_max);
        out += r.feasible ? ",1\n" : ",0\n";
    }
    return out;
}

inline std::string summary_csv(const std::string& variable, std::span<const SweepSummary> summary) {
    std::string out = "sweep_variable,value,scheme,count,mean_phi_seconds,std_phi_seconds\n";
    for (const auto& s : summary) {
        out += variable + ',' + format_number(s.value) + ',' + std::string(to_string(s.scheme)) + ',' +
               std::to_string(s.count) + ',' + format_number(s.mean_phi) + ',' + format_number(s.std_phi) + '\n';
    }
    return out;
}

inline std::string trace_csv(std::span<const double> trace) {
    std::string out = "iteration,gbest_fitness\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out += std::to_string(i) + ',' + format_number(trace[i]) + '\n';
    return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DomainError("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw DomainError("failed writing '" + path.string() + "'");
}

inline void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
    write_text(path, sweep_csv(rows));
}

} // namespace maiscc
