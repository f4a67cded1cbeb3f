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

// YAML configuration: strict schema (unknown keys rejected, every error names
// the field and line) and an effective-config echo that parses back to the
// same values. The schema is documented in config/schema.yaml.

#pragma once

#include "maiscc/harness.hpp"
#include "maiscc/pso.hpp"
#include "maiscc/types.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace maiscc {

struct ConfigFile {
    std::uint64_t seed = 0;
    ScenarioSettings scenario;
    PsoParams pso;
    SweepSpec sweep;

    friend bool operator==(const ConfigFile&, const ConfigFile&) = default;
};

class ConfigError : public DomainError {
  public:
    ConfigError(std::string field, int line, const std::string& message)
        : DomainError("config: " + (field.empty() ? std::string("<root>") : field) +
                      (line > 0 ? " (line " + std::to_string(line) + ")" : std::string()) + ": " + message),
          field_(std::move(field)), line_(line) {}

    const std::string& field() const { return field_; }
    int line() const { return line_; }

  private:
    std::string field_;
    int line_;
};

namespace detail {

inline int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

class Section {
  public:
    Section(YAML::Node node, std::string path, std::initializer_list<const char*> keys)
        : node_(std::move(node)), path_(std::move(path)) {
        if (!node_.IsMap())
            throw ConfigError(path_, line_of(node_), "expected a mapping");
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.count(key))
                throw ConfigError(join(key), line_of(kv.first), "unknown key '" + key + "'");
        }
    }

    bool has(const char* key) const { return static_cast<bool>(node_[key]); }
    YAML::Node child(const char* key) const { return node_[key]; }
    std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void read(const char* key, double& out) const {
        if (auto n = node_[key])
            out = scalar<double>(n, key, "a number");
    }

    void read(const char* key, std::size_t& out) const {
        if (auto n = node_[key]) {
            const auto v = scalar<long long>(n, key, "a non-negative integer");
            if (v < 0)
                throw ConfigError(join(key), line_of(n), "expected a non-negative integer");
            out = static_cast<std::size_t>(v);
        }
    }

    void read_u64(const char* key, std::uint64_t& out) const {
        if (auto n = node_[key])
            out = scalar<std::uint64_t>(n, key, "an unsigned 64-bit integer");
    }

    void read(const char* key, bool& out) const {
        if (auto n = node_[key])
            out = scalar<bool>(n, key, "a boolean");
    }

    void read(const char* key, std::string& out) const {
        if (auto n = node_[key])
            out = scalar<std::string>(n, key, "a string");
    }

    void read(const char* key, std::vector<double>& out) const {
        if (auto n = node_[key]) {
            if (!n.IsSequence())
                throw ConfigError(join(key), line_of(n), "expected a list of numbers");
            out.clear();
            for (const auto& item : n)
                out.push_back(scalar<double>(item, key, "a number"));
        }
    }

    void read(const char* key, Vec3& out) const {
        if (auto n = node_[key])
            out = point(n, key);
    }

    void read(const char* key, std::vector<Vec3>& out) const {
        if (auto n = node_[key]) {
            if (!n.IsSequence())
                throw ConfigError(join(key), line_of(n), "expected a list of [x, y, z] points");
            out.clear();
            for (const auto& item : n)
                out.push_back(point(item, key));
        }
    }

    void read(const char* key, std::optional<std::size_t>& out) const {
        if (auto n = node_[key]) {
            if (n.IsNull()) {
                out.reset();
                return;
            }
            std::size_t v = 0;
            read(key, v);
            out = v;
        }
    }

  private:
    template <class T>
    T scalar(const YAML::Node& n, const char* key, const char* expected) const {
        if (!n.IsScalar())
            throw ConfigError(join(key), line_of(n), std::string("expected ") + expected);
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            throw ConfigError(join(key), line_of(n), std::string("expected ") + expected + ", got '" +
                                                         n.Scalar() + "'");
        }
    }

    Vec3 point(const YAML::Node& n, const char* key) const {
        if (!n.IsSequence() || n.size() != 3)
            throw ConfigError(join(key), line_of(n), "expected a point [x, y, z]");
        return {scalar<double>(n[0], key, "a number"), scalar<double>(n[1], key, "a number"),
                scalar<double>(n[2], key, "a number")};
    }

    YAML::Node node_;
    std::string path_;
};

} // namespace detail

inline ConfigFile parse_config_string(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("", e.mark.line + 1, e.msg);
    }
    ConfigFile cfg;
    if (root.IsNull())
        return cfg;

    detail::Section top(root, "", {"seed", "scenario", "pso", "sweep"});
    top.read_u64("seed", cfg.seed);

    if (top.has("scenario")) {
        detail::Section s(top.child("scenario"), "scenario",
                          {"num_aavs", "antennas", "region_size", "min_spacing", "wavelength", "bs_position",
                           "aav_height", "target_offset", "aav_positions", "target_positions", "task_bits",
                           "task_bits_range", "max_power", "gamma_min", "bs_compute", "cycles_per_bit", "bandwidth",
                           "noise_power_dbm", "reference_gain_db", "rician_factor"});
        auto& sc = cfg.scenario;
        s.read("num_aavs", sc.num_aavs);
        s.read("antennas", sc.antennas);
        s.read("region_size", sc.region_size);
        s.read("min_spacing", sc.min_spacing);
        s.read("wavelength", sc.wavelength);
        s.read("bs_position", sc.bs_position);
        s.read("aav_height", sc.aav_height);
        s.read("target_offset", sc.target_offset);
        s.read("aav_positions", sc.aav_positions);
        s.read("target_positions", sc.target_positions);
        s.read("task_bits", sc.task_bits);
        if (s.has("task_bits_range")) {
            std::vector<double> range;
            s.read("task_bits_range", range);
            if (range.size() != 2)
                throw ConfigError("scenario.task_bits_range", detail::line_of(s.child("task_bits_range")),
                                  "expected [min, max]");
            sc.task_bits_min = range[0];
            sc.task_bits_max = range[1];
        }
        s.read("max_power", sc.max_power);
        s.read("gamma_min", sc.gamma_min);
        s.read("bs_compute", sc.bs_compute);
        s.read("cycles_per_bit", sc.cycles_per_bit);
        s.read("bandwidth", sc.bandwidth);
        s.read("noise_power_dbm", sc.noise_power_dbm);
        s.read("reference_gain_db", sc.reference_gain_db);
        s.read("rician_factor", sc.rician_factor);
    }

    if (top.has("pso")) {
        detail::Section s(top.child("pso"), "pso",
                          {"particles", "iterations", "c1", "c2", "omega_max", "omega_min", "step", "velocity_limit",
                           "penalty_spacing", "penalty_sensing", "threads", "inject_baselines"});
        auto& p = cfg.pso;
        s.read("particles", p.particles);
        s.read("iterations", p.iterations);
        s.read("c1", p.c1);
        s.read("c2", p.c2);
        s.read("omega_max", p.omega_max);
        s.read("omega_min", p.omega_min);
        s.read("step", p.step);
        s.read("velocity_limit", p.velocity_limit);
        s.read("penalty_spacing", p.penalty_spacing);
        s.read("penalty_sensing", p.penalty_sensing);
        s.read("threads", p.threads);
        s.read("inject_baselines", p.inject_baselines);
        try {
            p.validate();
        } catch (const DomainError& e) {
            throw ConfigError("pso", detail::line_of(top.child("pso")), e.what());
        }
    }

    if (top.has("sweep")) {
        detail::Section s(top.child("sweep"), "sweep",
                          {"variable", "values", "instances", "schemes", "particles", "iterations"});
        auto& sw = cfg.sweep;
        if (s.has("variable")) {
            std::string name;
            s.read("variable", name);
            auto v = parse_sweep_variable(name);
            if (!v)
                throw ConfigError("sweep.variable", detail::line_of(s.child("variable")),
                                  "expected one of f_bs_max, P_max, N, M");
            sw.variable = *v;
        }
        s.read("values", sw.values);
        s.read("instances", sw.instances);
        if (s.has("schemes")) {
            const auto node = s.child("schemes");
            if (!node.IsSequence())
                throw ConfigError("sweep.schemes", detail::line_of(node), "expected a list of ma/fpa/rpa");
            sw.schemes.clear();
            for (const auto& item : node) {
                auto scheme = item.IsScalar() ? parse_scheme(item.Scalar()) : std::nullopt;
                if (!scheme)
                    throw ConfigError("sweep.schemes", detail::line_of(item), "expected one of ma, fpa, rpa");
                sw.schemes.push_back(*scheme);
            }
        }
        s.read("particles", sw.particles);
        s.read("iterations", sw.iterations);
        try {
            sw.validate();
        } catch (const DomainError& e) {
            throw ConfigError("sweep", detail::line_of(top.child("sweep")), e.what());
        }
    }
    return cfg;
}

inline ConfigFile parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", 0, "cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_string(buffer.str());
}

namespace detail {

inline void emit_point(YAML::Emitter& out, const Vec3& p) {
    out << YAML::Flow << YAML::BeginSeq << p.x << p.y << p.z << YAML::EndSeq;
}

inline void emit_points(YAML::Emitter& out, const std::vector<Vec3>& pts) {
    out << YAML::BeginSeq;
    for (const auto& p : pts)
        emit_point(out, p);
    out << YAML::EndSeq;
}

} // namespace detail

// Every field with its effective value; parses back to an equal ConfigFile.
inline std::string echo_config(const ConfigFile& cfg) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "seed" << YAML::Value << cfg.seed;

    const auto& sc = cfg.scenario;
    out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "num_aavs" << YAML::Value << sc.num_aavs;
    out << YAML::Key << "antennas" << YAML::Value << sc.antennas;
    out << YAML::Key << "region_size" << YAML::Value << sc.region_size;
    out << YAML::Key << "min_spacing" << YAML::Value << sc.min_spacing;
    out << YAML::Key << "wavelength" << YAML::Value << sc.wavelength;
    out << YAML::Key << "bs_position" << YAML::Value;
    detail::emit_point(out, sc.bs_position);
    out << YAML::Key << "aav_height" << YAML::Value << sc.aav_height;
    out << YAML::Key << "target_offset" << YAML::Value << sc.target_offset;
    out << YAML::Key << "aav_positions" << YAML::Value;
    detail::emit_points(out, sc.aav_positions);
    out << YAML::Key << "target_positions" << YAML::Value;
    detail::emit_points(out, sc.target_positions);
    out << YAML::Key << "task_bits" << YAML::Value << YAML::Flow << sc.task_bits;
    out << YAML::Key << "task_bits_range" << YAML::Value << YAML::Flow << YAML::BeginSeq << sc.task_bits_min
        << sc.task_bits_max << YAML::EndSeq;
    out << YAML::Key << "max_power" << YAML::Value << sc.max_power;
    out << YAML::Key << "gamma_min" << YAML::Value << sc.gamma_min;
    out << YAML::Key << "bs_compute" << YAML::Value << sc.bs_compute;
    out << YAML::Key << "cycles_per_bit" << YAML::Value << sc.cycles_per_bit;
    out << YAML::Key << "bandwidth" << YAML::Value << sc.bandwidth;
    out << YAML::Key << "noise_power_dbm" << YAML::Value << sc.noise_power_dbm;
    out << YAML::Key << "reference_gain_db" << YAML::Value << sc.reference_gain_db;
    out << YAML::Key << "rician_factor" << YAML::Value << sc.rician_factor;
    out << YAML::EndMap;

    const auto& p = cfg.pso;
    out << YAML::Key << "pso" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "particles" << YAML::Value << p.particles;
    out << YAML::Key << "iterations" << YAML::Value << p.iterations;
    out << YAML::Key << "c1" << YAML::Value << p.c1;
    out << YAML::Key << "c2" << YAML::Value << p.c2;
    out << YAML::Key << "omega_max" << YAML::Value << p.omega_max;
    out << YAML::Key << "omega_min" << YAML::Value << p.omega_min;
    out << YAML::Key << "step" << YAML::Value << p.step;
    out << YAML::Key << "velocity_limit" << YAML::Value << p.velocity_limit;
    out << YAML::Key << "penalty_spacing" << YAML::Value << p.penalty_spacing;
    out << YAML::Key << "penalty_sensing" << YAML::Value << p.penalty_sensing;
    out << YAML::Key << "threads" << YAML::Value << p.threads;
    out << YAML::Key << "inject_baselines" << YAML::Value << p.inject_baselines;
    out << YAML::EndMap;

    const auto& sw = cfg.sweep;
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "variable" << YAML::Value << std::string(to_string(sw.variable));
    out << YAML::Key << "values" << YAML::Value << YAML::Flow << sw.values;
    out << YAML::Key << "instances" << YAML::Value << sw.instances;
    out << YAML::Key << "schemes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto s : sw.schemes)
        out << std::string(to_string(s));
    out << YAML::EndSeq;
    out << YAML::Key << "particles" << YAML::Value;
    if (sw.particles)
        out << *sw.particles;
    else
        out << YAML::Null;
    out << YAML::Key << "iterations" << YAML::Value;
    if (sw.iterations)
        out << *sw.iterations;
    else
        out << YAML::Null;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

} // namespace maiscc
