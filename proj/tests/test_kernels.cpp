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
#include <cstdlib>
#include <cstring>
#include <vector>

#include <gtest/gtest.h>

#include "qsmc/dynamics.hpp"
#include "qsmc/kernels.hpp"
#include "qsmc/rng.hpp"

namespace qsmc {
namespace {

using kernels::BlochBatch;
using kernels::CoeffBatch;
using kernels::KernelSet;

struct Inputs {
    BlochBatch r;
    CoeffBatch c;
};

Inputs random_inputs(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    Inputs in{BlochBatch(n), CoeffBatch(n)};
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        in.r.set(i, (1.0 / norm(v)) * v);
        // Include zero-field lanes, which rotate must leave alone.
        if (i % 7 == 3) {
            in.c.set(i, {0.0, 0.0, 0.0});
        } else {
            in.c.set(i, {rng.uniform(-100, 100), rng.uniform(-100, 100), 1.0 + rng.uniform(-0.5, 0.5)});
        }
    }
    return in;
}

bool bit_equal(const BlochBatch &a, const BlochBatch &b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        BlochVector u = a.get(i), v = b.get(i);
        if (std::memcmp(&u, &v, sizeof u) != 0) return false;
    }
    return true;
}

class AvxEquivalence : public ::testing::TestWithParam<std::size_t> {
protected:
    void SetUp() override {
        avx2_ = kernels::avx2_kernels();
        if (avx2_ == nullptr) GTEST_SKIP() << "AVX2 not available";
    }
    const KernelSet *avx2_ = nullptr;
};

TEST_P(AvxEquivalence, Rk4StepBitIdentical) {
    Inputs a = random_inputs(GetParam(), 11), b = random_inputs(GetParam(), 11);
    for (int k = 0; k < 5; ++k) {
        kernels::scalar_kernels().rk4_step(a.r.lanes(), a.c.lanes(), 1e-3);
        avx2_->rk4_step(b.r.lanes(), b.c.lanes(), 1e-3);
    }
    EXPECT_TRUE(bit_equal(a.r, b.r));
}

TEST_P(AvxEquivalence, RenormalizeBitIdentical) {
    Inputs a = random_inputs(GetParam(), 12), b = random_inputs(GetParam(), 12);
    for (std::size_t i = 0; i < a.r.size(); ++i) {
        a.r.set(i, (1.0 + 1e-3 * static_cast<double>(i)) * a.r.get(i));
        b.r.set(i, (1.0 + 1e-3 * static_cast<double>(i)) * b.r.get(i));
    }
    kernels::scalar_kernels().renormalize(a.r.lanes());
    avx2_->renormalize(b.r.lanes());
    EXPECT_TRUE(bit_equal(a.r, b.r));
}

TEST_P(AvxEquivalence, RotateBitIdentical) {
    Inputs a = random_inputs(GetParam(), 13), b = random_inputs(GetParam(), 13);
    kernels::scalar_kernels().rotate(a.r.lanes(), a.c.lanes(), 0.37);
    avx2_->rotate(b.r.lanes(), b.c.lanes(), 0.37);
    EXPECT_TRUE(bit_equal(a.r, b.r));
}

// Sizes cover empty input, pure tails, and full vectors plus tails.
INSTANTIATE_TEST_SUITE_P(Sizes, AvxEquivalence, ::testing::Values(0, 1, 3, 4, 5, 8, 17, 64, 101));

TEST(ScalarKernels, MatchSingleLaneStep) {
    Inputs in = random_inputs(9, 21);
    std::vector<BlochVector> expect;
    for (std::size_t i = 0; i < 9; ++i) {
        HamiltonianCoeffs c = in.c.get(i);
        expect.push_back(kernels::rk4_step(in.r.get(i), c.axis(), 2e-4));
    }
    kernels::scalar_kernels().rk4_step(in.r.lanes(), in.c.lanes(), 2e-4);
    for (std::size_t i = 0; i < 9; ++i) {
        BlochVector got = in.r.get(i);
        EXPECT_EQ(0, std::memcmp(&got, &expect[i], sizeof got)) << "lane " << i;
    }
}

TEST(ScalarKernels, RotateLeavesZeroFieldLanes) {
    Inputs in = random_inputs(8, 22);
    BlochVector before = in.r.get(3);
    kernels::scalar_kernels().rotate(in.r.lanes(), in.c.lanes(), 5.0);
    BlochVector after = in.r.get(3);
    EXPECT_EQ(before, after);
}

TEST(ScalarKernels, RotateMatchesRk4) {
    BlochBatch exact(1, {0.6, 0.0, 0.8});
    CoeffBatch c(1);
    c.set(0, {0.3, -0.2, 1.0});
    kernels::scalar_kernels().rotate(exact.lanes(), c.lanes(), 2.0);
    BlochVector r{0.6, 0.0, 0.8};
    for (int k = 0; k < 20000; ++k) r = kernels::rk4_step(r, {0.3, -0.2, 1.0}, 1e-4);
    EXPECT_NEAR(norm(r - exact.get(0)), 0.0, 1e-11);
}

TEST(ScalarKernels, RenormalizeGivesUnitVectors) {
    BlochBatch b(3);
    b.set(0, {3, 0, 4});
    b.set(1, {0, 2, 0});
    b.set(2, {1, 1, 1});
    kernels::scalar_kernels().renormalize(b.lanes());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(norm(b.get(i)), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(b.get(0).x, 0.6);
}

TEST(Dispatch, ActiveSetIsConsistent) {
    const KernelSet &k = kernels::active_kernels();
    if (kernels::avx2_kernels() != nullptr && std::getenv("QSMC_ISA") == nullptr) {
        EXPECT_EQ(k.isa, kernels::Isa::avx2);
    } else {
        EXPECT_EQ(k.isa, kernels::Isa::scalar);
    }
    EXPECT_STREQ(kernels::scalar_kernels().name, "scalar");
}

}  // namespace
}  // namespace qsmc
