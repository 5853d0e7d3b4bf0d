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

#include "qsmc/bloch.hpp"
#include "qsmc/rng.hpp"

namespace qsmc {
namespace {

void expect_vec_near(Vec3 a, Vec3 b, double tol) {
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

TEST(PureState, BasisStatesOnTheSphere) {
    expect_vec_near(to_bloch(PureState::zero()), {0, 0, 1}, 0.0);
    expect_vec_near(to_bloch(PureState::one()), {0, 0, -1}, 0.0);
    expect_vec_near(to_bloch(PureState::plus()), {1, 0, 0}, 1e-15);
    expect_vec_near(to_bloch(PureState(Complex(1), Complex(0, 1))), {0, 1, 0}, 1e-15);
}

TEST(PureState, ConstructorNormalizes) {
    PureState s(Complex(3), Complex(0, 4));
    EXPECT_NEAR(s.p0() + s.p1(), 1.0, 1e-15);
    EXPECT_NEAR(s.p0(), 0.36, 1e-15);
    EXPECT_THROW(PureState(Complex(0), Complex(0)), std::invalid_argument);
    EXPECT_THROW(PureState(Complex(NAN), Complex(1)), std::invalid_argument);
}

TEST(PureState, CanonicalPhase) {
    Complex g = std::polar(1.0, 2.1);
    PureState s = PureState(g * 0.6, g * Complex(0, 0.8)).canonical();
    EXPECT_NEAR(s.a0().imag(), 0.0, 1e-15);
    EXPECT_GT(s.a0().real(), 0.0);
    EXPECT_NEAR(s.a1().imag(), 0.8, 1e-15);

    // With a0 = 0 the phase goes on a1.
    PureState t = PureState(Complex(0), std::polar(1.0, -1.0)).canonical();
    EXPECT_DOUBLE_EQ(t.a1().real(), 1.0);
    EXPECT_EQ(t.a1().imag(), 0.0);
}

TEST(PureState, BlochRoundTrip) {
    RngStream rng(5);
    for (int i = 0; i < 200; ++i) {
        double theta = rng.uniform(0, std::numbers::pi);
        double phi = rng.uniform(0, 2 * std::numbers::pi);
        PureState s = PureState::from_angles(theta, phi);
        BlochVector r = to_bloch(s);
        EXPECT_NEAR(norm(r), 1.0, 1e-14);
        expect_vec_near(r, {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)}, 1e-14);
        expect_vec_near(to_bloch(from_bloch(r)), r, 1e-14);
        PureState c = from_bloch(r);
        EXPECT_NEAR(std::abs(c.a0() - s.canonical().a0()), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(c.a1() - s.canonical().a1()), 0.0, 1e-12);
    }
}

TEST(PureState, FromBlochRejectsNonUnit) {
    EXPECT_THROW(from_bloch({0, 0, 1.01}), std::invalid_argument);
    EXPECT_NO_THROW(from_bloch({0, 0, 1 + 1e-9}));
    // South pole: phase convention puts a1 = 1.
    PureState s = from_bloch({0, 0, -1});
    EXPECT_EQ(s.a1(), Complex(1.0));
}

TEST(SlidingMode, ConfigValidation) {
    EXPECT_NO_THROW(SlidingModeConfig(0.01, 0.2));
    EXPECT_THROW(SlidingModeConfig(0.0, 0.2), std::invalid_argument);
    EXPECT_THROW(SlidingModeConfig(1.0, 0.2), std::invalid_argument);
    EXPECT_THROW(SlidingModeConfig(1.5, 0.2), std::invalid_argument);
    EXPECT_THROW(SlidingModeConfig(0.01, 0.0), std::invalid_argument);
    EXPECT_THROW(SlidingModeConfig(0.01, -1.0), std::invalid_argument);
}

TEST(SlidingMode, ValueAndDomain) {
    EXPECT_EQ(sliding_mode_value(PureState::zero()), 0.0);
    EXPECT_EQ(sliding_mode_value(PureState::one()), 1.0);
    EXPECT_NEAR(sliding_mode_value(PureState::plus()), 0.5, 1e-15);

    SlidingModeConfig cfg(0.01, 0.2);
    EXPECT_TRUE(in_domain(PureState::zero(), cfg));
    EXPECT_FALSE(in_domain(PureState::plus(), cfg));
    // Boundary state |<0|psi>|^2 = 1 - p0 is inside.
    PureState edge(Complex(std::sqrt(0.99)), Complex(std::sqrt(0.01)));
    EXPECT_TRUE(in_domain(edge, cfg));
    PureState outside(Complex(std::sqrt(0.989)), Complex(std::sqrt(0.011)));
    EXPECT_FALSE(in_domain(outside, cfg));
}

TEST(SlidingMode, FailureProbability) {
    EXPECT_EQ(failure_probability({0, 0, 1}), 0.0);
    EXPECT_EQ(failure_probability({0, 0, -1}), 1.0);
    EXPECT_NEAR(failure_probability({0.6, 0, 0.8}), 0.1, 1e-15);
    // Rounding just outside the sphere is clamped.
    EXPECT_EQ(failure_probability({0, 0, 1 + 1e-12}), 0.0);
}

TEST(Vec3, CrossProduct) {
    Vec3 c = cross({1, 0, 0}, {0, 1, 0});
    expect_vec_near(c, {0, 0, 1}, 0.0);
    EXPECT_EQ(dot({1, 2, 3}, {4, 5, 6}), 32.0);
}

}  // namespace
}  // namespace qsmc
