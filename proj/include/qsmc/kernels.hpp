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

#pragma once

// Batched Bloch-sphere kernels over structure-of-arrays lanes.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant chosen at runtime. The variants perform the same IEEE operations in
// the same order (no FMA contraction), so their results are bit-identical;
// tests/test_kernels.cpp holds them to that.

#include <cstddef>
#include <span>
#include <vector>

#include "qsmc/bloch.hpp"

namespace qsmc::kernels {

struct BlochLanes {
    std::span<double> x;
    std::span<double> y;
    std::span<double> z;

    std::size_t size() const { return x.size(); }
};

struct CoeffLanes {
    std::span<const double> cx;
    std::span<const double> cy;
    std::span<const double> cz;

    std::size_t size() const { return cx.size(); }
};

/// Owning SoA batch of Bloch vectors.
class BlochBatch {
public:
    explicit BlochBatch(std::size_t n, BlochVector init = {0.0, 0.0, 1.0})
        : x_(n, init.x), y_(n, init.y), z_(n, init.z) {}

    std::size_t size() const { return x_.size(); }
    BlochVector get(std::size_t i) const { return {x_[i], y_[i], z_[i]}; }
    void set(std::size_t i, BlochVector r) {
        x_[i] = r.x;
        y_[i] = r.y;
        z_[i] = r.z;
    }
    void fill(BlochVector r) {
        for (std::size_t i = 0; i < size(); ++i) set(i, r);
    }
    std::span<const double> z() const { return z_; }
    BlochLanes lanes() { return {x_, y_, z_}; }

private:
    std::vector<double> x_, y_, z_;
};

/// Owning SoA batch of Hamiltonian coefficients, one triple per lane.
class CoeffBatch {
public:
    explicit CoeffBatch(std::size_t n) : cx_(n), cy_(n), cz_(n) {}

    std::size_t size() const { return cx_.size(); }
    void set(std::size_t i, HamiltonianCoeffs c) {
        cx_[i] = c.cx;
        cy_[i] = c.cy;
        cz_[i] = c.cz;
    }
    HamiltonianCoeffs get(std::size_t i) const { return {cx_[i], cy_[i], cz_[i]}; }
    CoeffLanes lanes() const { return {cx_, cy_, cz_}; }

private:
    std::vector<double> cx_, cy_, cz_;
};

enum class Isa { scalar, avx2 };

struct KernelSet {
    Isa isa;
    const char *name;
    /// One classical RK4 step of dr/dt = c x r with c held constant over the
    /// step. No renormalization.
    void (*rk4_step)(BlochLanes r, CoeffLanes c, double dt);
    /// r <- r / |r| lane-wise.
    void (*renormalize)(BlochLanes r);
    /// Exact rotation about c/|c| by |c| t (Rodrigues). Lanes with c = 0 are
    /// left unchanged.
    void (*rotate)(BlochLanes r, CoeffLanes c, double t);
};

const KernelSet &scalar_kernels();
/// nullptr when the variant is not compiled in or the CPU lacks AVX2.
const KernelSet *avx2_kernels();
/// Best available set for this CPU. Setting QSMC_ISA=scalar in the
/// environment pins the scalar reference.
const KernelSet &active_kernels();

/// Single-lane RK4 step shared by the scalar kernel and the one-trajectory
/// propagators.
inline BlochVector rk4_step(BlochVector r, Vec3 c, double h) {
    const double hh = 0.5 * h;
    const double h6 = h / 6.0;
    double k1x = c.y * r.z - c.z * r.y;
    double k1y = c.z * r.x - c.x * r.z;
    double k1z = c.x * r.y - c.y * r.x;
    double tx = r.x + hh * k1x, ty = r.y + hh * k1y, tz = r.z + hh * k1z;
    double k2x = c.y * tz - c.z * ty;
    double k2y = c.z * tx - c.x * tz;
    double k2z = c.x * ty - c.y * tx;
    tx = r.x + hh * k2x, ty = r.y + hh * k2y, tz = r.z + hh * k2z;
    double k3x = c.y * tz - c.z * ty;
    double k3y = c.z * tx - c.x * tz;
    double k3z = c.x * ty - c.y * tx;
    tx = r.x + h * k3x, ty = r.y + h * k3y, tz = r.z + h * k3z;
    double k4x = c.y * tz - c.z * ty;
    double k4y = c.z * tx - c.x * tz;
    double k4z = c.x * ty - c.y * tx;
    return {r.x + h6 * (((k1x + 2.0 * k2x) + 2.0 * k3x) + k4x),
            r.y + h6 * (((k1y + 2.0 * k2y) + 2.0 * k3y) + k4y),
            r.z + h6 * (((k1z + 2.0 * k2z) + 2.0 * k3z) + k4z)};
}

inline BlochVector renormalized(BlochVector r) {
    double inv = 1.0 / std::sqrt((r.x * r.x + r.y * r.y) + r.z * r.z);
    return {r.x * inv, r.y * inv, r.z * inv};
}

}  // namespace qsmc::kernels
