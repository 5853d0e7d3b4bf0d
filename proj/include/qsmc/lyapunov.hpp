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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsmc/bloch.hpp"
#include "qsmc/dynamics.hpp"
#include "qsmc/waveform.hpp"

namespace qsmc {

/// Raised when a drive cannot reach the sliding-mode domain within max_time.
class DesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shaping function f of the feedback law; must satisfy x f(x) >= 0. An empty
/// function is the identity.
using Shaping = std::function<double(double)>;

/// Gains of the feedback law. The default actuates sigma_y only.
struct LyapunovConfig {
    double kx = 0.0;
    double ky = 100.0;
    double kz = 0.0;
    Shaping shaping;
    /// Stop threshold on the failure probability; the domain's p0 when unset.
    std::optional<double> terminal_p;
    double max_time = 1.0;

    void validate() const;
};

/// Sampled open-loop control; sample k holds on [k dt, (k+1) dt) and the
/// control is zero outside [0, duration).
struct ControlTrace {
    double dt = 1e-4;
    std::vector<HamiltonianCoeffs> samples;

    double duration() const { return static_cast<double>(samples.size()) * dt; }
    HamiltonianCoeffs at(double t) const;
    ControlFunction as_function() const;
};

/// V = (1 - |<0|psi>|^2) / 2.
double lyapunov_value(const PureState &state);

/// u_k = K_k f(Im[e^{i arg<psi|0>} <0|sigma_k|psi>]), with arg taken as 0 when
/// <psi|0> vanishes (the state is read in its canonical phase). Channels with
/// K_k = 0 return exactly 0.
HamiltonianCoeffs control_value(const PureState &state, const LyapunovConfig &cfg);

struct DriveDesign {
    ControlTrace trace;
    std::vector<TrajectorySample> trajectory;

    double duration() const { return trace.duration(); }
};

/// Simulates the noise-free closed loop from `initial`, recomputing the
/// control from the simulated state every step (zero-order hold), and stops
/// at the first step whose failure probability is <= terminal_p. The
/// recorded trace reproduces the trajectory exactly when replayed.
DriveDesign design_drive(const PureState &initial, const LyapunovConfig &cfg,
                         const IntegratorConfig &icfg, const SlidingModeConfig &smc);

struct ControlSegment {
    double t_begin;
    double t_end;
    double u;
};

struct TimeOptimalReference {
    std::vector<ControlSegment> segments;
    ControlTrace trace;

    double duration() const { return segments.empty() ? 0.0 : segments.back().t_end; }
};

/// Two-segment bang-bang sigma_y drive from |1>: -u_max on [0, 0.016] then
/// +u_max on (0.016, 0.030], with both times scaled by 100 / u_max.
TimeOptimalReference time_optimal_reference(double u_max, double dt = 1e-4);

/// Replays a trace open-loop from `initial` under `noise`, integrating with
/// the trace's dt.
std::vector<TrajectorySample> replay_trace(const ControlTrace &trace, const PureState &initial,
                                           const UncertaintyWaveform &noise);

/// Final |<0|psi>|^2 of a replay for each waveform, batched across lanes.
std::vector<double> replay_terminal_population(const ControlTrace &trace, const PureState &initial,
                                               std::span<const UncertaintyWaveform> noise);

struct NoiseToleranceResult {
    /// Final |<0|psi>|^2 per seed.
    std::vector<double> populations;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;

    /// Largest distance of any population from `center`.
    double max_deviation(double center) const;
};

/// Replays `trace` from `initial` once per seed under uniform noise of bound
/// eps along `axis`, resampled every resample_step (the trace's dt when 0).
/// Seed i uses RngStream(seed).split(i).
NoiseToleranceResult replay_under_uniform_noise(const ControlTrace &trace, const PureState &initial,
                                                Axis axis, double eps, std::size_t n_seeds,
                                                std::uint64_t seed, double resample_step = 0.0);

/// Text format: "dt=<value>" then one "ux uy uz" line per sample, 12
/// significant digits.
void write_control_trace(std::ostream &out, const ControlTrace &trace);
ControlTrace read_control_trace(std::istream &in);

}  // namespace qsmc
