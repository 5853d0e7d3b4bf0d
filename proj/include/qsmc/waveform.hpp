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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qsmc/bloch.hpp"
#include "qsmc/rng.hpp"

namespace qsmc {

enum class Axis { x, y, z, xy };

std::string to_string(Axis axis);

enum class WaveformKind {
    none,
    constant_xy,
    bangbang,
    piecewise,
    uniform_noise,
    phase_flip_z,
    sinusoid,
    rotating_xy,
    custom_sampled,
};

std::string to_string(WaveformKind kind);

/// Uncertainty coefficients (eps_x(t), eps_y(t), eps_z(t)) of
/// H_Delta = eps_x I_x + eps_y I_y + eps_z I_z, with the bound
/// sqrt(eps_x^2 + eps_y^2 + eps_z^2) <= bound enforced at construction.
///
/// Evaluation is a pure function of t, including the noise kinds, whose
/// samples are keyed on (seed, resample index).
class UncertaintyWaveform {
public:
    /// H_Delta = 0.
    static UncertaintyWaveform none();
    /// eps0 cos(gamma0) I_x + eps0 sin(gamma0) I_y.
    static UncertaintyWaveform constant_xy(double eps0, double gamma0);
    /// Constant eps_bar along a single axis (the bang-bang extreme when
    /// |eps_bar| equals the bound).
    static UncertaintyWaveform constant(Axis axis, double eps_bar);
    /// +-eps along a single axis. signs[i] in {-1,+1} holds on
    /// [switch_times[i-1], switch_times[i]); the last sign holds forever.
    static UncertaintyWaveform bangbang(Axis axis, double eps, std::vector<double> switch_times,
                                        std::vector<int> signs);
    /// Piecewise-constant vector values, same switching convention.
    static UncertaintyWaveform piecewise(double bound, std::vector<double> switch_times,
                                         std::vector<Vec3> values);
    /// Fresh uniform sample every resample_step: in [-eps, eps] along x, y or
    /// z, or uniform over the disk of radius eps for Axis::xy.
    static UncertaintyWaveform uniform_noise(Axis axis, double eps, double resample_step,
                                             std::uint64_t seed);
    /// eps(t) I_z from zero-order-held samples, |samples| <= bound.
    static UncertaintyWaveform phase_flip_z(double bound, double interval,
                                            std::vector<double> samples);
    /// amp sin(freq t + phase) along a single axis.
    static UncertaintyWaveform sinusoid(Axis axis, double amp, double freq, double phase);
    /// Magnitude amp sin(freq t + phase) along direction gamma0 + rate t in
    /// the xy plane. freq = 0, phase = pi/2, rate = 1 co-rotates with the free
    /// precession.
    static UncertaintyWaveform rotating_xy(double amp, double freq, double phase, double rate,
                                           double gamma0);
    /// Zero-order-held vector samples; sample i holds on [i, i+1) * interval,
    /// the last one forever.
    static UncertaintyWaveform custom_sampled(double bound, double interval,
                                              std::vector<Vec3> samples);

    Vec3 at(double t) const;
    HamiltonianCoeffs coeffs_at(double t) const {
        Vec3 e = at(t);
        return {e.x, e.y, e.z};
    }

    double bound() const { return bound_; }
    WaveformKind kind() const;
    std::string describe() const;

private:
    struct None {};
    struct Constant {
        Vec3 value;
    };
    struct Piecewise {
        std::vector<double> switch_times;
        std::vector<Vec3> values;
    };
    struct Noise {
        Axis axis;
        double eps;
        double step;
        RngStream rng;
    };
    struct Sampled {
        double interval;
        std::vector<Vec3> samples;
    };
    struct Sinusoid {
        Axis axis;
        double amp, freq, phase;
    };
    struct Rotating {
        double amp, freq, phase, rate, gamma0;
    };
    using Data = std::variant<None, Constant, Piecewise, Noise, Sampled, Sinusoid, Rotating>;

    UncertaintyWaveform(WaveformKind kind, double bound, Data data)
        : kind_(kind), bound_(bound), data_(std::move(data)) {}

    WaveformKind kind_;
    double bound_;
    Data data_;
};

/// Families used to draw random admissible waveforms.
enum class WaveformFamily { bangbang, uniform_noise, sinusoid, co_rotating };

std::string to_string(WaveformFamily family);

/// Draws an admissible waveform of the given family with bound eps, acting
/// along `axis` (x or y for single-axis classes, xy for the general class).
/// Switch times of the bang-bang family fall inside [0, horizon].
UncertaintyWaveform random_waveform(WaveformFamily family, Axis axis, double eps, double horizon,
                                    RngStream &rng);

}  // namespace qsmc
