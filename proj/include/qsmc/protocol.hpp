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

// Monte-Carlo simulation of the drive / measure / hold / recover loop.
//
// Each trial drives the known initial state into the sliding-mode domain with
// a designed Lyapunov trace, measures sigma_z, and then repeats n_cycles
// times: hold for the period T under H0 + H_Delta, measure. A |1> outcome
// triggers a recovery drive from |1> followed by another measurement, until
// the outcome is |0>.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsmc/bloch.hpp"
#include "qsmc/dynamics.hpp"
#include "qsmc/lyapunov.hpp"
#include "qsmc/measurement.hpp"
#include "qsmc/period.hpp"
#include "qsmc/waveform.hpp"

namespace qsmc {

/// Uncertainty applied during hold phases.
enum class HoldNoise {
    /// H_Delta = 0.
    none,
    /// Constant +eps along the configured axis: the worst case for a single
    /// axis. For Axis::xy it is eps along x.
    constant,
    /// Uniform noise resampled every resample_step.
    uniform_noise,
    /// A fresh waveform of `family` for every hold phase.
    random_family,
};

std::string to_string(HoldNoise noise);

struct ProtocolConfig {
    SlidingModeConfig smc{0.01, 0.2};
    UncertaintyClass uncertainty_class = UncertaintyClass::single_axis;
    /// x or y for a single axis, xy for the general class.
    Axis axis = Axis::x;
    HoldNoise hold = HoldNoise::constant;
    WaveformFamily family = WaveformFamily::bangbang;
    /// Resample step of uniform noise; 0 means the integrator step.
    double resample_step = 0.0;
    LyapunovConfig lyapunov;
    IntegratorConfig integrator;
    std::size_t n_cycles = 99;
    std::size_t n_trials = 100;
    std::uint64_t seed = 1;
    PureState initial = PureState::one();
    /// Hold period; select_period(smc, uncertainty_class) when unset.
    std::optional<double> period;
    /// Apply uniform noise of bound eps along `axis` during drives as well.
    bool noisy_drives = false;

    void validate() const;
    double effective_resample_step() const {
        return resample_step > 0.0 ? resample_step : integrator.dt;
    }
};

enum class PhaseKind { drive, hold, recovery };

std::string to_string(PhaseKind kind);

struct ProtocolRecord {
    std::size_t trial = 0;
    /// 0 for the initial drive, 1..n_cycles for holds; a recovery measurement
    /// carries the cycle of the hold that failed.
    std::size_t cycle = 0;
    PhaseKind kind = PhaseKind::drive;
    MeasurementRecord measurement;
};

struct ProtocolStats {
    /// records[i] is the time-ordered sequence of trial i.
    std::vector<std::vector<ProtocolRecord>> records;
    std::size_t n_cycles = 0;
    std::size_t total = 0;
    std::size_t failures = 0;
    std::size_t recoveries = 0;
    /// Counts restricted to drive and hold measurements.
    std::size_t total_excluding_recovery = 0;
    std::size_t failures_excluding_recovery = 0;
    /// Largest computed pre-measurement failure probability at a hold
    /// measurement.
    double max_hold_failure_prob = 0.0;
    double period = 0.0;
    PeriodRule rule_used = PeriodRule::t1_formula;
    double drive_duration = 0.0;
    double recovery_duration = 0.0;
    double wall_seconds = 0.0;

    double rate() const { return total ? static_cast<double>(failures) / total : 0.0; }
    double rate_excluding_recovery() const {
        return total_excluding_recovery
                   ? static_cast<double>(failures_excluding_recovery) / total_excluding_recovery
                   : 0.0;
    }
    /// Normal-approximation 95% half-width of rate().
    double ci95() const;
    double ci95_excluding_recovery() const;
    /// Failure fraction of the hold measurements of each cycle 1..n_cycles.
    std::vector<double> cycle_failure_rates() const;
};

/// Designs both drives, then runs all trials. Hold phases are batched across
/// trials; each trial draws from RngStream(seed).split(trial).
ProtocolStats run_protocol(const ProtocolConfig &cfg);

struct FailureCurveSample {
    double t = 0.0;
    double p = 0.0;
};

/// p(t) = (1 - z(t))/2 along the evolution from |0> under H0 + waveform on
/// [0, t_max]. The waveform must respect the bound eps, and a single-axis
/// class rejects waveforms with both x and y parts at t = 0.
std::vector<FailureCurveSample> hold_phase_failure_curve(double eps, UncertaintyClass cls,
                                                         double t_max,
                                                         const UncertaintyWaveform &waveform,
                                                         const IntegratorConfig &cfg = {});

/// CSV trial,cycle,t,outcome,pre_failure_prob followed by a blank line and a
/// summary block total,failures,rate,ci95 with one row including and one
/// excluding recovery measurements.
void write_protocol_csv(std::ostream &out, const ProtocolStats &stats);

}  // namespace qsmc
