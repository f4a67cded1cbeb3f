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

#include "maiscc/types.hpp"

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace maiscc {

// Stream tags. Every random quantity is drawn from a stream keyed by
// (master seed, tag, indices...) so results never depend on evaluation order.
enum class StreamTag : std::uint64_t {
    Instance = 1,
    TaskSize = 2,
    Nlos = 3,
    RandomLayout = 4,
    SwarmInit = 5,
    SwarmStep = 6,
    Optimizer = 7,
    Validation = 8,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = splitmix64(master);
    for (auto k : keys)
        h = splitmix64(h ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, StreamTag tag, std::initializer_list<std::uint64_t> keys = {}) {
    std::uint64_t h = derive_seed(master, {static_cast<std::uint64_t>(tag)});
    return keys.size() == 0 ? h : derive_seed(h, keys);
}

// Portable random stream: mt19937_64 output is fixed by the standard, and the
// conversions below avoid the implementation-defined std distributions so
// draws are bit-identical across standard libraries.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller (one value per call, cached pair).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(2.0 * kPi * u2);
        has_spare_ = true;
        return radius * std::cos(2.0 * kPi * u2);
    }

    static constexpr double kInvSqrt2 = 0.70710678118654752440;

    // Circularly-symmetric complex Gaussian with unit variance.
    cplx complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re * kInvSqrt2, im * kInvSqrt2};
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace maiscc
