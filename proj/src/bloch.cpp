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

#include "qsmc/bloch.hpp"

#include <algorithm>
#include <string>

namespace qsmc {

PureState::PureState(Complex a0, Complex a1) {
    double n = std::sqrt(std::norm(a0) + std::norm(a1));
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("PureState: amplitudes must be finite and not both zero");
    }
    a0_ = a0 / n;
    a1_ = a1 / n;
}

PureState PureState::from_angles(double theta, double phi) {
    return {Complex(std::cos(theta / 2)), std::polar(std::sin(theta / 2), phi)};
}

PureState PureState::canonical() const {
    double m0 = std::abs(a0_);
    if (m0 > 0.0) {
        Complex phase = std::conj(a0_) / m0;
        return {Complex(m0), a1_ * phase};
    }
    return {Complex(0.0), Complex(std::abs(a1_))};
}

SlidingModeConfig::SlidingModeConfig(double p0, double eps) : p0_(p0), eps_(eps) {
    if (!(p0 > 0.0 && p0 < 1.0)) {
        throw std::invalid_argument("p0 must lie in (0,1), got " + std::to_string(p0));
    }
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("eps must be > 0, got " + std::to_string(eps));
    }
}

BlochVector to_bloch(const PureState &state) {
    // rho_10 = a1 conj(a0) = (x + i y)/2
    Complex c = state.a1() * std::conj(state.a0());
    return {2.0 * c.real(), 2.0 * c.imag(), state.p0() - state.p1()};
}

PureState from_bloch(BlochVector r) {
    double n = norm(r);
    if (!(std::abs(n - 1.0) <= 1e-6)) {
        throw std::invalid_argument("from_bloch: |r| = " + std::to_string(n) +
                                    " is not a pure state");
    }
    r = (1.0 / n) * r;
    // Take the larger amplitude from z and the smaller from x + iy, which
    // keeps full relative precision near either pole.
    Complex xy(r.x, r.y);
    if (r.z >= 0.0) {
        double a0 = std::sqrt((1.0 + r.z) / 2.0);
        return {Complex(a0), xy / (2.0 * a0)};
    }
    double s = std::sqrt((1.0 - r.z) / 2.0);
    double rho = std::abs(xy);
    if (rho == 0.0) return {Complex(0.0), Complex(1.0)};
    return {Complex(rho / (2.0 * s)), xy / rho * s};
}

double sliding_mode_value(const PureState &state) { return std::clamp(1.0 - state.p0(), 0.0, 1.0); }

double failure_probability(BlochVector r) { return std::clamp((1.0 - r.z) / 2.0, 0.0, 1.0); }

// Boundary is inclusive; the slack absorbs rounding of normalized amplitudes.
bool in_domain(const PureState &state, const SlidingModeConfig &cfg) {
    return state.p0() >= 1.0 - cfg.p0() - 1e-12;
}

}  // namespace qsmc
