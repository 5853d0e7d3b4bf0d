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

#include "qsmc/protocol.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qsmc {
namespace {

constexpr std::uint64_t kNoiseTag = 0x6e6f697365;
constexpr std::uint64_t kDriveNoiseTag = 0x6472697665;

double half_width(double rate, std::size_t n) {
    return n ? 1.96 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(n)) : 0.0;
}

UncertaintyWaveform hold_waveform(const ProtocolConfig &cfg, double period, std::size_t cycle,
                                  const RngStream &noise) {
    const double eps = cfg.smc.eps();
    switch (cfg.hold) {
        case HoldNoise::none:
            return UncertaintyWaveform::none();
        case HoldNoise::constant:
            return cfg.axis == Axis::xy ? UncertaintyWaveform::constant_xy(eps, 0.0)
                                        : UncertaintyWaveform::constant(cfg.axis, eps);
        case HoldNoise::uniform_noise:
            return UncertaintyWaveform::uniform_noise(cfg.axis, eps, cfg.effective_resample_step(),
                                                      noise.split(cycle)());
        case HoldNoise::random_family: {
            RngStream rng = noise.split(cycle);
            return random_waveform(cfg.family, cfg.axis, eps, period, rng);
        }
    }
    throw std::logic_error("unknown hold noise");
}

// Runs one drive trace for a subset of trials and returns their final states.
class DriveRunner {
public:
    DriveRunner(const ProtocolConfig &cfg, const ControlTrace &trace, const PureState &start)
        : cfg_(cfg), trace_(trace), start_(to_bloch(start)) {
        if (!cfg.noisy_drives) {
            cached_ = evolve_bloch(start_, trace.as_function(), UncertaintyWaveform::none(),
                                   {0.0, trace.duration()}, IntegratorConfig{trace.dt});
        }
    }

    std::vector<BlochVector> run(const std::vector<std::size_t> &trials,
                                 const std::vector<RngStream> &noise,
                                 const std::vector<std::uint64_t> &tags) const {
        if (!cfg_.noisy_drives) return std::vector<BlochVector>(trials.size(), cached_);
        std::vector<UncertaintyWaveform> waves;
        waves.reserve(trials.size());
        for (std::size_t i = 0; i < trials.size(); ++i) {
            waves.push_back(UncertaintyWaveform::uniform_noise(
                cfg_.axis, cfg_.smc.eps(), cfg_.effective_resample_step(),
                noise[trials[i]].split(kDriveNoiseTag).split(tags[i])()));
        }
        kernels::BlochBatch batch(trials.size(), start_);
        evolve_batch(batch, waves, trace_.duration(), IntegratorConfig{trace_.dt},
                     trace_.as_function());
        std::vector<BlochVector> out(trials.size());
        for (std::size_t i = 0; i < trials.size(); ++i) out[i] = batch.get(i);
        return out;
    }

private:
    const ProtocolConfig &cfg_;
    const ControlTrace &trace_;
    BlochVector start_;
    BlochVector cached_;
};

}  // namespace

std::string to_string(HoldNoise noise) {
    switch (noise) {
        case HoldNoise::none: return "none";
        case HoldNoise::constant: return "constant";
        case HoldNoise::uniform_noise: return "uniform_noise";
        case HoldNoise::random_family: return "random_family";
    }
    return "?";
}

std::string to_string(PhaseKind kind) {
    switch (kind) {
        case PhaseKind::drive: return "drive";
        case PhaseKind::hold: return "hold";
        case PhaseKind::recovery: return "recovery";
    }
    return "?";
}

void ProtocolConfig::validate() const {
    if (n_cycles < 1) throw std::invalid_argument("n_cycles must be >= 1");
    if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
    if (period && !(*period > 0.0)) throw std::invalid_argument("period must be > 0");
    if (resample_step < 0.0) throw std::invalid_argument("resample_step must be >= 0");
    if (uncertainty_class == UncertaintyClass::single_axis && axis != Axis::x && axis != Axis::y) {
        throw std::invalid_argument("single-axis uncertainty needs axis x or y");
    }
    if (uncertainty_class == UncertaintyClass::general_xy && axis != Axis::xy) {
        throw std::invalid_argument("general xy uncertainty needs axis xy");
    }
    integrator.validate();
    lyapunov.validate();
}

double ProtocolStats::ci95() const { return half_width(rate(), total); }

double ProtocolStats::ci95_excluding_recovery() const {
    return half_width(rate_excluding_recovery(), total_excluding_recovery);
}

std::vector<double> ProtocolStats::cycle_failure_rates() const {
    std::vector<std::size_t> fails(n_cycles, 0), counts(n_cycles, 0);
    for (const auto &trial : records) {
        for (const ProtocolRecord &r : trial) {
            if (r.kind != PhaseKind::hold || r.cycle == 0 || r.cycle > n_cycles) continue;
            ++counts[r.cycle - 1];
            if (r.measurement.outcome == Outcome::one) ++fails[r.cycle - 1];
        }
    }
    std::vector<double> out(n_cycles, 0.0);
    for (std::size_t c = 0; c < n_cycles; ++c) {
        if (counts[c]) out[c] = static_cast<double>(fails[c]) / counts[c];
    }
    return out;
}

ProtocolStats run_protocol(const ProtocolConfig &cfg) {
    cfg.validate();
    auto started = std::chrono::steady_clock::now();

    ProtocolStats stats;
    stats.n_cycles = cfg.n_cycles;
    if (cfg.period) {
        stats.period = *cfg.period;
        stats.rule_used = select_period(cfg.smc, cfg.uncertainty_class).rule_used;
    } else {
        PeriodDesign design = select_period(cfg.smc, cfg.uncertainty_class);
        stats.period = design.period;
        stats.rule_used = design.rule_used;
    }

    DriveDesign drive = design_drive(cfg.initial, cfg.lyapunov, cfg.integrator, cfg.smc);
    DriveDesign recovery = design_drive(PureState::one(), cfg.lyapunov, cfg.integrator, cfg.smc);
    stats.drive_duration = drive.duration();
    stats.recovery_duration = recovery.duration();
    DriveRunner drive_runner(cfg, drive.trace, cfg.initial);
    DriveRunner recovery_runner(cfg, recovery.trace, PureState::one());

    const std::size_t n = cfg.n_trials;
    RngStream root(cfg.seed);
    std::vector<RngStream> measure_rng, noise_rng;
    measure_rng.reserve(n);
    noise_rng.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        measure_rng.push_back(root.split(i));
        noise_rng.push_back(root.split(i).split(kNoiseTag));
    }
    std::vector<double> clock(n, 0.0);
    std::vector<std::size_t> recovery_count(n, 0);
    stats.records.assign(n, {});

    auto measure = [&](std::size_t trial, BlochVector r, std::size_t cycle, PhaseKind kind) {
        auto [rec, post] = measure_z(from_bloch(r), measure_rng[trial], clock[trial]);
        stats.records[trial].push_back({trial, cycle, kind, rec});
        ++stats.total;
        bool failed = rec.outcome == Outcome::one;
        if (failed) ++stats.failures;
        if (kind != PhaseKind::recovery) {
            ++stats.total_excluding_recovery;
            if (failed) ++stats.failures_excluding_recovery;
        }
        if (kind == PhaseKind::hold) {
            stats.max_hold_failure_prob = std::max(stats.max_hold_failure_prob, rec.pre_failure_prob);
        }
        return failed;
    };

    // Recovers every listed trial until its measurement reads |0>.
    auto recover = [&](std::vector<std::size_t> pending, std::size_t cycle) {
        while (!pending.empty()) {
            // Tag 0 is the initial drive; recovery k of a trial uses tag k + 1.
            std::vector<std::uint64_t> tags;
            for (std::size_t trial : pending) tags.push_back(recovery_count[trial] + 1);
            auto finals = recovery_runner.run(pending, noise_rng, tags);
            std::vector<std::size_t> still;
            for (std::size_t i = 0; i < pending.size(); ++i) {
                std::size_t trial = pending[i];
                ++stats.recoveries;
                ++recovery_count[trial];
                clock[trial] += recovery.duration();
                if (measure(trial, finals[i], cycle, PhaseKind::recovery)) still.push_back(trial);
            }
            pending = std::move(still);
        }
    };

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;

    {
        auto finals = drive_runner.run(all, noise_rng, std::vector<std::uint64_t>(n, 0));
        std::vector<std::size_t> failed;
        for (std::size_t i = 0; i < n; ++i) {
            clock[i] += drive.duration();
            if (measure(i, finals[i], 0, PhaseKind::drive)) failed.push_back(i);
        }
        recover(std::move(failed), 0);
    }

    std::vector<UncertaintyWaveform> waves;
    waves.reserve(n);
    for (std::size_t cycle = 1; cycle <= cfg.n_cycles; ++cycle) {
        waves.clear();
        for (std::size_t i = 0; i < n; ++i) {
            waves.push_back(hold_waveform(cfg, stats.period, cycle, noise_rng[i]));
        }
        kernels::BlochBatch batch(n);
        evolve_batch(batch, waves, stats.period, cfg.integrator);
        std::vector<std::size_t> failed;
        for (std::size_t i = 0; i < n; ++i) {
            clock[i] += stats.period;
            if (measure(i, batch.get(i), cycle, PhaseKind::hold)) failed.push_back(i);
        }
        recover(std::move(failed), cycle);
    }

    stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return stats;
}

std::vector<FailureCurveSample> hold_phase_failure_curve(double eps, UncertaintyClass cls,
                                                         double t_max,
                                                         const UncertaintyWaveform &waveform,
                                                         const IntegratorConfig &cfg) {
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
    if (waveform.bound() > eps * (1.0 + 1e-12) + 1e-15) {
        throw std::invalid_argument("waveform bound exceeds eps");
    }
    if (cls == UncertaintyClass::single_axis) {
        Vec3 e = waveform.at(0.0);
        if (e.x != 0.0 && e.y != 0.0) {
            throw std::invalid_argument("single-axis class given a waveform with x and y parts");
        }
    }
    auto traj = propagate_bloch({0.0, 0.0, 1.0}, {}, waveform, {0.0, t_max}, cfg);
    std::vector<FailureCurveSample> out;
    out.reserve(traj.size());
    for (const TrajectorySample &s : traj) out.push_back({s.t, failure_probability(s.r)});
    return out;
}

void write_protocol_csv(std::ostream &out, const ProtocolStats &stats) {
    char line[160];
    out << "trial,cycle,t,outcome,pre_failure_prob\n";
    for (const auto &trial : stats.records) {
        for (const ProtocolRecord &r : trial) {
            std::snprintf(line, sizeof line, "%zu,%zu,%.12g,%d,%.12g\n", r.trial, r.cycle,
                          r.measurement.t, r.measurement.outcome == Outcome::one ? 1 : 0,
                          r.measurement.pre_failure_prob);
            out << line;
        }
    }
    out << "\n# all measurements\ntotal,failures,rate,ci95\n";
    std::snprintf(line, sizeof line, "%zu,%zu,%.12g,%.12g\n", stats.total, stats.failures,
                  stats.rate(), stats.ci95());
    out << line;
    out << "\n# excluding recovery measurements\ntotal,failures,rate,ci95\n";
    std::snprintf(line, sizeof line, "%zu,%zu,%.12g,%.12g\n", stats.total_excluding_recovery,
                  stats.failures_excluding_recovery, stats.rate_excluding_recovery(),
                  stats.ci95_excluding_recovery());
    out << line;
}

}  // namespace qsmc
