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

#include "qsmc/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace qsmc {

void LyapunovConfig::validate() const {
    if (kx < 0.0 || ky < 0.0 || kz < 0.0) throw std::invalid_argument("gains must be >= 0");
    if (!(kx > 0.0 || ky > 0.0 || kz > 0.0)) {
        throw std::invalid_argument("at least one gain must be > 0");
    }
    if (terminal_p && !(*terminal_p > 0.0 && *terminal_p < 1.0)) {
        throw std::invalid_argument("terminal_p must lie in (0,1)");
    }
    if (!(max_time > 0.0)) throw std::invalid_argument("max_time must be > 0");
}

HamiltonianCoeffs ControlTrace::at(double t) const {
    if (t < 0.0) return {};
    auto k = static_cast<std::size_t>(std::floor(t / dt + 1e-9));
    return k < samples.size() ? samples[k] : HamiltonianCoeffs{};
}

ControlFunction ControlTrace::as_function() const {
    return [this](double t) { return at(t); };
}

double lyapunov_value(const PureState &state) { return 0.5 * sliding_mode_value(state); }

HamiltonianCoeffs control_value(const PureState &state, const LyapunovConfig &cfg) {
    PureState s = state.canonical();
    // With a0 real and >= 0 the phase factor e^{i arg<psi|0>} is 1, and
    // <0|sigma_k|psi> is a1, -i a1, a0 for k = x, y, z.
    Complex a0 = s.a0(), a1 = s.a1();
    double im_x = a1.imag();
    double im_y = -a1.real();
    double im_z = a0.imag();
    auto f = [&](double v) { return cfg.shaping ? cfg.shaping(v) : v; };
    HamiltonianCoeffs u;
    if (cfg.kx > 0.0) u.cx = cfg.kx * f(im_x);
    if (cfg.ky > 0.0) u.cy = cfg.ky * f(im_y);
    if (cfg.kz > 0.0) u.cz = cfg.kz * f(im_z);
    return u;
}

DriveDesign design_drive(const PureState &initial, const LyapunovConfig &cfg,
                         const IntegratorConfig &icfg, const SlidingModeConfig &smc) {
    cfg.validate();
    icfg.validate();
    const double threshold = cfg.terminal_p.value_or(smc.p0());
    DriveDesign out;
    out.trace.dt = icfg.dt;
    BlochVector r = to_bloch(initial);
    double t = 0.0;
    std::size_t k = 0;
    while (failure_probability(r) > threshold) {
        if (t > cfg.max_time) {
            std::ostringstream msg;
            msg << "Lyapunov drive did not reach failure probability " << threshold << " within "
                << cfg.max_time << " (reached " << failure_probability(r)
                << "); increase the gain or max_time";
            throw DesignError(msg.str());
        }
        HamiltonianCoeffs u = control_value(from_bloch(r), cfg);
        out.trace.samples.push_back(u);
        out.trajectory.push_back({t, r, u, {}});
        r = kernels::renormalized(kernels::rk4_step(r, (kFreeHamiltonian + u).axis(), icfg.dt));
        ++k;
        t = static_cast<double>(k) * icfg.dt;
    }
    out.trajectory.push_back({t, r, {}, {}});
    return out;
}

TimeOptimalReference time_optimal_reference(double u_max, double dt) {
    if (!(u_max > 0.0)) throw std::invalid_argument("u_max must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    const double scale = 100.0 / u_max;
    const double t_switch = 0.016 * scale;
    const double t_end = 0.030 * scale;
    TimeOptimalReference ref;
    ref.segments = {{0.0, t_switch, -u_max}, {t_switch, t_end, u_max}};
    ref.trace.dt = dt;
    auto n_switch = static_cast<std::size_t>(std::llround(t_switch / dt));
    auto n_end = static_cast<std::size_t>(std::llround(t_end / dt));
    for (std::size_t k = 0; k < n_end; ++k) {
        ref.trace.samples.push_back({0.0, k < n_switch ? -u_max : u_max, 0.0});
    }
    return ref;
}

std::vector<TrajectorySample> replay_trace(const ControlTrace &trace, const PureState &initial,
                                           const UncertaintyWaveform &noise) {
    return propagate_bloch(to_bloch(initial), trace.as_function(), noise, {0.0, trace.duration()},
                           IntegratorConfig{trace.dt});
}

std::vector<double> replay_terminal_population(const ControlTrace &trace, const PureState &initial,
                                               std::span<const UncertaintyWaveform> noise) {
    kernels::BlochBatch batch(noise.size(), to_bloch(initial));
    evolve_batch(batch, noise, trace.duration(), IntegratorConfig{trace.dt}, trace.as_function());
    std::vector<double> out(noise.size());
    for (std::size_t i = 0; i < noise.size(); ++i) out[i] = 1.0 - failure_probability(batch.get(i));
    return out;
}

double NoiseToleranceResult::max_deviation(double center) const {
    double d = 0.0;
    for (double p : populations) d = std::max(d, std::abs(p - center));
    return d;
}

NoiseToleranceResult replay_under_uniform_noise(const ControlTrace &trace, const PureState &initial,
                                                Axis axis, double eps, std::size_t n_seeds,
                                                std::uint64_t seed, double resample_step) {
    if (n_seeds == 0) throw std::invalid_argument("n_seeds must be >= 1");
    const double step = resample_step > 0.0 ? resample_step : trace.dt;
    RngStream root(seed);
    std::vector<UncertaintyWaveform> waves;
    waves.reserve(n_seeds);
    for (std::size_t i = 0; i < n_seeds; ++i) {
        waves.push_back(UncertaintyWaveform::uniform_noise(axis, eps, step, root.split(i)()));
    }
    NoiseToleranceResult out;
    out.populations = replay_terminal_population(trace, initial, waves);
    auto [lo, hi] = std::minmax_element(out.populations.begin(), out.populations.end());
    out.min = *lo;
    out.max = *hi;
    double sum = 0.0;
    for (double p : out.populations) sum += p;
    out.mean = sum / static_cast<double>(n_seeds);
    return out;
}

void write_control_trace(std::ostream &out, const ControlTrace &trace) {
    char line[128];
    std::snprintf(line, sizeof line, "dt=%.12g\n", trace.dt);
    out << line;
    for (const HamiltonianCoeffs &u : trace.samples) {
        std::snprintf(line, sizeof line, "%.12g %.12g %.12g\n", u.cx, u.cy, u.cz);
        out << line;
    }
}

ControlTrace read_control_trace(std::istream &in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("dt=", 0) != 0) {
        throw std::invalid_argument("control trace must start with a dt=<value> line");
    }
    ControlTrace trace;
    try {
        trace.dt = std::stod(header.substr(3));
    } catch (const std::exception &) {
        throw std::invalid_argument("control trace: unreadable dt in '" + header + "'");
    }
    if (!(trace.dt > 0.0)) throw std::invalid_argument("control trace: dt must be > 0");
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        HamiltonianCoeffs u;
        if (!(fields >> u.cx >> u.cy >> u.cz)) {
            throw std::invalid_argument("control trace: malformed line " + std::to_string(lineno));
        }
        trace.samples.push_back(u);
    }
    return trace;
}

}  // namespace qsmc
