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

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qsmc {

using Complex = std::complex<double>;

/// Cartesian triple used for Bloch vectors, field axes and costates.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Vec3 &, const Vec3 &) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Real Bloch vector r = (tr rho sx, tr rho sy, tr rho sz). Pure states sit on
/// the unit sphere.
using BlochVector = Vec3;

/// Coefficients of I_x, I_y, I_z in a Hamiltonian (hbar = 1). Total
/// Hamiltonians carry the free part I_z as cz += 1.
struct HamiltonianCoeffs {
    double cx = 0.0;
    double cy = 0.0;
    double cz = 0.0;

    Vec3 axis() const { return {cx, cy, cz}; }
    bool finite() const { return std::isfinite(cx) && std::isfinite(cy) && std::isfinite(cz); }

    friend HamiltonianCoeffs operator+(HamiltonianCoeffs a, HamiltonianCoeffs b) {
        return {a.cx + b.cx, a.cy + b.cy, a.cz + b.cz};
    }
    friend bool operator==(const HamiltonianCoeffs &, const HamiltonianCoeffs &) = default;
};

/// The free Hamiltonian H0 = I_z.
inline constexpr HamiltonianCoeffs kFreeHamiltonian{0.0, 0.0, 1.0};

/// Normalized two-level pure state a0|0> + a1|1>.
///
/// Construction normalizes the amplitudes; a zero vector is rejected. The
/// global phase is left as given, use canonical() to fix it (a0 real and
/// non-negative, or a1 real and non-negative when a0 vanishes).
class PureState {
public:
    PureState() : a0_(1.0, 0.0), a1_(0.0, 0.0) {}
    PureState(Complex a0, Complex a1);

    static PureState zero() { return {Complex(1.0), Complex(0.0)}; }
    static PureState one() { return {Complex(0.0), Complex(1.0)}; }
    /// (|0> + |1>)/sqrt(2)
    static PureState plus() { return {Complex(1.0), Complex(1.0)}; }
    /// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
    static PureState from_angles(double theta, double phi);

    Complex a0() const { return a0_; }
    Complex a1() const { return a1_; }
    double p0() const { return std::norm(a0_); }
    double p1() const { return std::norm(a1_); }

    PureState canonical() const;

private:
    Complex a0_;
    Complex a1_;
};

/// Allowed failure probability p0 in (0,1) and uncertainty bound eps > 0.
/// The sliding-mode domain is D = { |psi> : |<0|psi>|^2 >= 1 - p0 }.
class SlidingModeConfig {
public:
    SlidingModeConfig(double p0, double eps);

    double p0() const { return p0_; }
    double eps() const { return eps_; }

private:
    double p0_;
    double eps_;
};

BlochVector to_bloch(const PureState &state);

/// Inverse of to_bloch with the canonical phase. Throws std::invalid_argument
/// when |r| is further than 1e-6 from 1.
PureState from_bloch(BlochVector r);

/// S = 1 - |<0|psi>|^2; zero exactly on the sliding mode |0>.
double sliding_mode_value(const PureState &state);

/// Probability that a sigma_z measurement collapses to |1>, (1 - z)/2, clamped
/// to [0,1].
double failure_probability(BlochVector r);

bool in_domain(const PureState &state, const SlidingModeConfig &cfg);

}  // namespace qsmc
