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

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "qsmc/bloch.hpp"
#include "qsmc/kernels.hpp"
#include "qsmc/waveform.hpp"

namespace qsmc {

/// Fixed-step classical RK4 settings.
struct IntegratorConfig {
    double dt = 1e-4;

    void validate() const;
};

struct TimeSpan {
    double t0 = 0.0;
    double t1 = 0.0;

    double length() const { return t1 - t0; }
};

/// Control coefficients u(t) (without the free part). An empty function means
/// no control.
using ControlFunction = std::function<HamiltonianCoeffs(double t)>;

struct TrajectorySample {
    double t = 0.0;
    BlochVector r;
    HamiltonianCoeffs controls;
    Vec3 noise;
};

struct StateSample {
    double t = 0.0;
    PureState state;
};

/// Step grid t0, t0+dt, ..., t1. The final step is shortened when the span is
/// not a whole number of steps.
class StepGrid {
public:
    StepGrid(TimeSpan span, double dt);

    std::size_t steps() const { return steps_; }
    double time(std::size_t k) const { return k >= steps_ ? span_.t1 : span_.t0 + k * dt_; }
    /// A span that is a whole number of steps (to 1e-9 dt) keeps width dt on
    /// the last step; otherwise the last step is shortened to end at t1.
    double width(std::size_t k) const { return k + 1 < steps_ || whole_ ? dt_ : span_.t1 - time(k); }

private:
    TimeSpan span_;
    double dt_;
    std::size_t steps_;
    bool whole_ = false;
};

/// Integrates dr/dt = c x r with c = H0 + controls + noise held constant over
/// each step (left endpoint), renormalizing after every step. Returns one
/// sample per grid time including both endpoints.
std::vector<TrajectorySample> propagate_bloch(BlochVector r0, const ControlFunction &controls,
                                              const UncertaintyWaveform &noise, TimeSpan span,
                                              const IntegratorConfig &cfg);

/// Same evolution, returning only the final vector.
BlochVector evolve_bloch(BlochVector r0, const ControlFunction &controls,
                         const UncertaintyWaveform &noise, TimeSpan span,
                         const IntegratorConfig &cfg);

/// Integrates i d|psi>/dt = (I_z + sum c_k I_k)|psi> with the same step
/// schedule and zero-order hold as propagate_bloch.
std::vector<StateSample> propagate_schrodinger(const PureState &s0, const ControlFunction &controls,
                                               const UncertaintyWaveform &noise, TimeSpan span,
                                               const IntegratorConfig &cfg);

/// Exact solution for a constant total Hamiltonian: rotation of r0 about
/// coeffs.axis() by |coeffs| t.
BlochVector exact_step_constant(BlochVector r0, HamiltonianCoeffs coeffs, double t);

/// Called after each batch step with the step index (1-based) and its end
/// time.
using BatchObserver = std::function<void(std::size_t step, double t, const kernels::BlochBatch &)>;

/// Evolves every lane of `state` over [0, duration] under H0 + controls(t) +
/// noise[lane](t), using the active SIMD kernel set. noise.size() must match
/// the batch.
void evolve_batch(kernels::BlochBatch &state, std::span<const UncertaintyWaveform> noise,
                  double duration, const IntegratorConfig &cfg, const ControlFunction &controls = {},
                  const BatchObserver &observer = {});

/// CSV with columns t,x,y,z,ux,uy,uz,ex,ey,ez at 12 significant digits.
void write_trajectory_csv(std::ostream &out, std::span<const TrajectorySample> samples);

}  // namespace qsmc
