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

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace maiscc;

TEST(DirectionCosines, SlantToTarget) {
    const auto d = direction_cosines({0, 0, 50}, {20, 0, 0});
    EXPECT_NEAR(d.dist, std::sqrt(2900.0), 1e-12);
    EXPECT_NEAR(d.dx, 0.37139067635410372, 1e-12);
    EXPECT_DOUBLE_EQ(d.dy, 0.0);
}

TEST(DirectionCosines, Nadir) {
    const auto d = direction_cosines({0, 0, 50}, {0, 0, 0});
    EXPECT_EQ(d.dx, 0.0);
    EXPECT_EQ(d.dy, 0.0);
    EXPECT_EQ(d.dist, 50.0);
}

TEST(DirectionCosines, ThreeFourFive) {
    const auto d = direction_cosines({0, 0, 0}, {3, 4, 0});
    EXPECT_DOUBLE_EQ(d.dx, 0.6);
    EXPECT_DOUBLE_EQ(d.dy, 0.8);
    EXPECT_DOUBLE_EQ(d.dist, 5.0);
}

TEST(DirectionCosines, CoincidentPointsThrow) {
    try {
        direction_cosines({1, 2, 3}, {1, 2, 3});
        FAIL() << "expected an error";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("degenerate geometry"), std::string::npos);
    }
}

TEST(SteeringVector, NadirIsAllOnes) {
    const std::vector<Point2> array{{0.3, 1.7}, {5.0, 2.0}, {19.9, 0.1}};
    const auto a = steering_vector(array, {0.0, 0.0, 1.0});
    for (const auto& x : a) {
        EXPECT_DOUBLE_EQ(x.real(), 1.0);
        EXPECT_DOUBLE_EQ(x.imag(), 0.0);
    }
}

TEST(SteeringVector, HalfWavelengthFlip) {
    const std::vector<Point2> array{{0.0, 0.0}, {0.5, 0.0}};
    const auto a = steering_vector(array, {1.0, 0.0, 1.0});
    EXPECT_NEAR(std::abs(a[0] - cplx(1.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a[1] - cplx(-1.0, 0.0)), 0.0, 1e-15);
}

TEST(SteeringVector, UnitModulusAndNorm) {
    RandomStream rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Point2> array(4);
        for (auto& p : array)
            p = {rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0)};
        const Vec3 from{0, 0, 0};
        const Vec3 to{rng.uniform(-600, 600), rng.uniform(-600, 600), rng.uniform(-100, 100)};
        const auto a = steering_vector(array, direction_cosines(from, to));
        for (const auto& x : a)
            EXPECT_NEAR(std::abs(x), 1.0, 1e-12);
        EXPECT_NEAR(a.squaredNorm(), 4.0, 1e-12);
    }
}

TEST(SteeringVector, TranslationGivesCommonPhase) {
    RandomStream rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point2> array(5), shifted(5);
        const Point2 offset{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        for (std::size_t n = 0; n < array.size(); ++n) {
            array[n] = {rng.uniform(3, 17), rng.uniform(3, 17)};
            shifted[n] = {array[n].x + offset.x, array[n].y + offset.y};
        }
        const auto dir_g = direction_cosines({0, 0, 50}, {rng.uniform(-50, 50), rng.uniform(-50, 50), 0});
        const auto dir_x = direction_cosines({0, 0, 50}, {rng.uniform(-500, 500), rng.uniform(-500, 500), 0});
        const auto g = steering_vector(array, dir_g);
        const auto gs = steering_vector(shifted, dir_g);
        const auto b = steering_vector(array, dir_x);
        const auto bs = steering_vector(shifted, dir_x);

        // Entry-wise ratio is a single unit-modulus scalar.
        const cplx ratio = gs[0] / g[0];
        for (Eigen::Index n = 1; n < g.size(); ++n)
            EXPECT_NEAR(std::abs(gs[n] / g[n] - ratio), 0.0, 1e-9);

        const CMat X = b * b.adjoint() + 0.3 * g * g.adjoint();
        const CMat Xs = bs * bs.adjoint() + 0.3 * gs * gs.adjoint();
        EXPECT_NEAR(std::abs(g.dot(X * g)), std::abs(gs.dot(Xs * gs)), 1e-9);
    }
}

namespace {

ScenarioConfig single_link(double kappa, double distance) {
    ScenarioConfig s;
    s.num_aavs = 1;
    s.antennas = 4;
    s.aav_positions = {{0.6 * distance, 0.8 * distance, 0.0}};
    s.target_positions = {{0.6 * distance + 20.0, 0.8 * distance, -50.0}};
    s.task_bits = {1e7};
    s.max_power = {1.0};
    s.reference_gain = 1e-6;
    s.rician_factor = kappa;
    return s;
}

AntennaLayout random_layout(RandomStream& rng, std::size_t M, std::size_t N) {
    AntennaLayout layout(M, N);
    for (auto& array : layout.coords)
        for (auto& p : array)
            p = {rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0)};
    return layout;
}

} // namespace

TEST(Channel, LosOnlyLimit) {
    const auto s = single_link(std::numeric_limits<double>::infinity(), 100.0);
    RandomStream rng(2);
    const auto layout = random_layout(rng, 1, 4);
    const auto ch = generate_channel(s, layout, draw_nlos(9, 1, 4));
    for (const auto& x : ch.h[0])
        EXPECT_NEAR(std::abs(x), 1e-5, 1e-9 * 1e-5);
}

TEST(Channel, NlosOnlyLimit) {
    const auto s = single_link(0.0, 100.0);
    RandomStream rng(3);
    const auto layout = random_layout(rng, 1, 4);
    const auto nlos = draw_nlos(4, 1, 4);
    const auto ch = generate_channel(s, layout, nlos);
    const CVec expected = std::sqrt(1e-6) / 100.0 * nlos[0];
    EXPECT_LE((ch.h[0] - expected).norm(), 1e-15 * expected.norm());
}

TEST(Channel, DeterministicForFixedInputs) {
    const auto s = single_link(1.0, 80.0);
    RandomStream rng(4);
    const auto layout = random_layout(rng, 1, 4);
    const auto a = generate_channel(s, layout, draw_nlos(17, 1, 4));
    const auto b = generate_channel(s, layout, draw_nlos(17, 1, 4));
    for (Eigen::Index n = 0; n < 4; ++n) {
        EXPECT_EQ(a.h[0][n].real(), b.h[0][n].real());
        EXPECT_EQ(a.h[0][n].imag(), b.h[0][n].imag());
    }
}

TEST(Channel, AavAtBaseStationThrows) {
    auto s = single_link(1.0, 80.0);
    s.aav_positions = {{0.0, 0.0, 0.0}};
    EXPECT_THROW(generate_channel(s, AntennaLayout(1, 4), draw_nlos(1, 1, 4)), DomainError);
}

TEST(Channel, RicianPowerSplit) {
    RandomStream rng(8);
    const auto layout = random_layout(rng, 1, 4);
    for (double kappa : {0.0, 1.0, 10.0}) {
        const auto s = single_link(kappa, 120.0);
        const double expected = 4.0 * 1e-6 / (120.0 * 120.0);
        double sum = 0.0;
        const int draws = 20000;
        for (int k = 0; k < draws; ++k)
            sum += generate_channel(s, layout, draw_nlos(static_cast<std::uint64_t>(k), 1, 4)).h[0].squaredNorm();
        EXPECT_NEAR(sum / draws / expected, 1.0, 0.03) << "kappa " << kappa;
    }
}

TEST(Channel, NlosDrawsShareLeadingEntriesAcrossSizes) {
    const auto small = draw_nlos(21, 3, 2);
    const auto large = draw_nlos(21, 3, 8);
    for (std::size_t m = 0; m < 3; ++m)
        for (Eigen::Index n = 0; n < 2; ++n)
            EXPECT_EQ(small[m][n], large[m][n]);
}

TEST(Layout, FlattenRoundTrip) {
    RandomStream rng(1);
    const auto layout = random_layout(rng, 3, 4);
    const auto flat = layout.flatten();
    ASSERT_EQ(flat.size(), 24u);
    EXPECT_EQ(flat[0], layout.coords[0][0].x);
    EXPECT_EQ(flat[1], layout.coords[0][0].y);
    EXPECT_EQ(flat[2], layout.coords[0][1].x);
    const auto back = AntennaLayout::from_flat(flat, 3, 4);
    EXPECT_EQ(back.coords, layout.coords);
}

TEST(Layout, SpacingViolationsCountPairsWithinEachArray) {
    AntennaLayout layout(2, 3);
    layout.coords[0] = {{0, 0}, {0.2, 0}, {0.4, 0}};  // pairs (0,1), (1,2) violate; (0,2) is at 0.4
    layout.coords[1] = {{0, 0}, {1, 0}, {2, 0}};
    EXPECT_EQ(count_spacing_violations(layout, 0.5), 3u);
    EXPECT_EQ(count_spacing_violations(layout, 0.1), 0u);
    EXPECT_TRUE(within_region(layout, 2.0));
    EXPECT_FALSE(within_region(layout, 1.9));
}
