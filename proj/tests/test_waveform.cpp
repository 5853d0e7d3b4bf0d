// Copyright 2026 The qsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qsmc/dynamics.hpp"
#include "qsmc/waveform.hpp"

namespace qsmc {
namespace {

TEST(Waveform, BangBangSwitchingConvention) {
    auto w = UncertaintyWaveform::bangbang(Axis::y, 0.3, {1.0, 2.0}, {1, -1, 1});
    EXPECT_EQ(w.at(0.5).y, 0.3);
    EXPECT_EQ(w.at(1.0).y, -0.3);
    EXPECT_EQ(w.at(1.99).y, -0.3);
    EXPECT_EQ(w.at(2.0).y, 0.3);
    EXPECT_EQ(w.at(100.0).y, 0.3);
    EXPECT_EQ(w.at(0.5).x, 0.0);
    EXPECT_EQ(w.kind(), WaveformKind::bangbang);
    EXPECT_THROW(UncertaintyWaveform::bangbang(Axis::x, 0.3, {1.0}, {1}), std::invalid_argument);
    EXPECT_THROW(UncertaintyWaveform::bangbang(Axis::x, 0.3, {}, {2}), std::invalid_argument);
    EXPECT_THROW(UncertaintyWaveform::bangbang(Axis::x, 0.3, {2.0, 1.0}, {1, -1, 1}),
                 std::invalid_argument);
}

TEST(Waveform, BoundsEnforcedAtConstruction) {
    EXPECT_THROW(UncertaintyWaveform::piecewise(0.1, {}, {{0.2, 0, 0}}), std::invalid_argument);
    EXPECT_THROW(UncertaintyWaveform::custom_sampled(0.1, 0.1, {{0.08, 0.08, 0}}),
                 std::invalid_argument);
    EXPECT_THROW(UncertaintyWaveform::phase_flip_z(0.1, 0.1, {0.05, -0.2}), std::invalid_argument);
    EXPECT_THROW(UncertaintyWaveform::uniform_noise(Axis::x, 0.1, 0.0, 1), std::invalid_argument);
    EXPECT_THROW(UncertaintyWaveform::sinusoid(Axis::xy, 0.1, 1, 0), std::invalid_argument);
    EXPECT_NO_THROW(UncertaintyWaveform::custom_sampled(0.1, 0.1, {{0.06, 0.08, 0}}));
}

TEST(Waveform, ConstantXyDirection) {
    auto w = UncertaintyWaveform::constant_xy(0.2, std::numbers::pi / 2);
    EXPECT_NEAR(w.at(3.0).x, 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(w.at(3.0).y, 0.2);
    EXPECT_EQ(w.bound(), 0.2);
}

TEST(Waveform, UniformNoiseIsAPureFunctionOfTime) {
    auto a = UncertaintyWaveform::uniform_noise(Axis::x, 0.2, 0.01, 42);
    auto b = UncertaintyWaveform::uniform_noise(Axis::x, 0.2, 0.01, 42);
    auto c = UncertaintyWaveform::uniform_noise(Axis::x, 0.2, 0.01, 43);
    // Query order must not matter.
    double late = a.at(0.5).x;
    EXPECT_EQ(a.at(0.001).x, b.at(0.001).x);
    EXPECT_EQ(late, b.at(0.5).x);
    EXPECT_NE(a.at(0.001).x, c.at(0.001).x);
    // Held within a cell, fresh in the next.
    EXPECT_EQ(a.at(0.011).x, a.at(0.019).x);
    EXPECT_NE(a.at(0.019).x, a.at(0.021).x);
    // Grid times k*step land in cell k.
    EXPECT_EQ(a.at(3 * 0.01).x, a.at(0.035).x);
}

TEST(Waveform, UniformNoiseStatistics) {
    auto w = UncertaintyWaveform::uniform_noise(Axis::y, 0.2, 1.0, 7);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double v = w.at(i + 0.5).y;
        ASSERT_LE(std::abs(v), 0.2);
        sum += v;
        sq += v * v;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.005);
    EXPECT_NEAR(sq / n, 0.04 / 3.0, 0.0005);

    auto disk = UncertaintyWaveform::uniform_noise(Axis::xy, 0.2, 1.0, 8);
    int inner = 0;
    for (int i = 0; i < n; ++i) {
        Vec3 v = disk.at(i + 0.5);
        ASSERT_LE(norm(v), 0.2 + 1e-15);
        ASSERT_EQ(v.z, 0.0);
        if (norm(v) < 0.1) ++inner;
    }
    // Uniform on the disk: a quarter of the samples inside half the radius.
    EXPECT_NEAR(inner / double(n), 0.25, 0.01);
}

class RandomFamilies : public ::testing::TestWithParam<std::tuple<WaveformFamily, Axis>> {};

TEST_P(RandomFamilies, StayWithinBound) {
    auto [family, axis] = GetParam();
    RngStream root(99);
    for (int i = 0; i < 50; ++i) {
        RngStream rng = root.split(i);
        UncertaintyWaveform w = random_waveform(family, axis, 0.2, 3.0, rng);
        ASSERT_LE(w.bound(), 0.2);
        for (int k = 0; k <= 300; ++k) {
            Vec3 v = w.at(0.01 * k);
            ASSERT_LE(norm(v), 0.2 + 1e-12);
            if (axis == Axis::x) {
                ASSERT_EQ(v.y, 0.0);
            }
            if (axis == Axis::y) {
                ASSERT_EQ(v.x, 0.0);
            }
            ASSERT_EQ(v.z, 0.0);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(
    All, RandomFamilies,
    ::testing::Combine(::testing::Values(WaveformFamily::bangbang, WaveformFamily::uniform_noise,
                                         WaveformFamily::sinusoid, WaveformFamily::co_rotating),
                       ::testing::Values(Axis::x, Axis::y, Axis::xy)));

TEST(Waveform, CoRotatingFieldSaturatesTheGeneralBound) {
    // In the frame precessing with H0 the field is static with magnitude eps,
    // so z(t) = cos(eps t) exactly.
    for (double gamma0 : {0.0, 1.3, 4.0}) {
        auto w = UncertaintyWaveform::rotating_xy(0.2, 0.0, std::numbers::pi / 2, 1.0, gamma0);
        auto traj = propagate_bloch({0, 0, 1}, {}, w, {0.0, 10.0}, {1e-4});
        for (std::size_t k = 0; k < traj.size(); k += 1000) {
            EXPECT_NEAR(traj[k].r.z, std::cos(0.2 * traj[k].t), 1e-8);
        }
    }
}

TEST(Waveform, Names) {
    EXPECT_EQ(to_string(Axis::xy), "xy");
    EXPECT_EQ(to_string(WaveformFamily::co_rotating), "co-rotating");
    EXPECT_EQ(to_string(WaveformKind::phase_flip_z), "phase-flip-z");
    EXPECT_NE(UncertaintyWaveform::constant(Axis::x, 0.2).describe().find("bound=0.2"),
              std::string::npos);
}

}  // namespace
}  // namespace qsmc
