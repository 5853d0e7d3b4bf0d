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

#include "qsmc/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qsmc {
namespace {

constexpr double kBoundSlack = 1e-12;

Vec3 along(Axis axis, double value) {
    switch (axis) {
        case Axis::x:
            return {value, 0.0, 0.0};
        case Axis::y:
            return {0.0, value, 0.0};
        case Axis::z:
            return {0.0, 0.0, value};
        case Axis::xy:
            break;
    }
    throw std::invalid_argument("a single axis (x, y or z) is required");
}

void require_bound(double bound) {
    if (!(bound >= 0.0) || !std::isfinite(bound)) {
        throw std::invalid_argument("waveform bound must be finite and >= 0");
    }
}

void require_within(Vec3 v, double bound) {
    if (!(norm(v) <= bound + kBoundSlack)) {
        std::ostringstream msg;
        msg << "waveform value |(" << v.x << ", " << v.y << ", " << v.z << ")| exceeds bound "
            << bound;
        throw std::invalid_argument(msg.str());
    }
}

// Index of the zero-order-hold cell containing t; the slack keeps grid
// times k*dt from rounding into cell k-1.
std::size_t cell_index(double t, double interval) {
    if (t <= 0.0) return 0;
    return static_cast<std::size_t>(std::floor(t / interval + 1e-9));
}

void check_switch_times(const std::vector<double> &times, std::size_t n_values) {
    if (n_values != times.size() + 1) {
        throw std::invalid_argument("piecewise waveform needs one more value than switch times");
    }
    if (!std::is_sorted(times.begin(), times.end())) {
        throw std::invalid_argument("switch times must be sorted");
    }
}

}  // namespace

std::string to_string(Axis axis) {
    switch (axis) {
        case Axis::x:
            return "x";
        case Axis::y:
            return "y";
        case Axis::z:
            return "z";
        case Axis::xy:
            return "xy";
    }
    return "?";
}

std::string to_string(WaveformKind kind) {
    switch (kind) {
        case WaveformKind::none:
            return "none";
        case WaveformKind::constant_xy:
            return "constant-xy";
        case WaveformKind::bangbang:
            return "bangbang";
        case WaveformKind::piecewise:
            return "piecewise";
        case WaveformKind::uniform_noise:
            return "uniform-noise";
        case WaveformKind::phase_flip_z:
            return "phase-flip-z";
        case WaveformKind::sinusoid:
            return "sinusoid";
        case WaveformKind::rotating_xy:
            return "rotating-xy";
        case WaveformKind::custom_sampled:
            return "custom-sampled";
    }
    return "?";
}

std::string to_string(WaveformFamily family) {
    switch (family) {
        case WaveformFamily::bangbang:
            return "bangbang";
        case WaveformFamily::uniform_noise:
            return "uniform-noise";
        case WaveformFamily::sinusoid:
            return "sinusoid";
        case WaveformFamily::co_rotating:
            return "co-rotating";
    }
    return "?";
}

UncertaintyWaveform UncertaintyWaveform::none() { return {WaveformKind::none, 0.0, None{}}; }

UncertaintyWaveform UncertaintyWaveform::constant_xy(double eps0, double gamma0) {
    Vec3 v{eps0 * std::cos(gamma0), eps0 * std::sin(gamma0), 0.0};
    return {WaveformKind::constant_xy, std::abs(eps0), Constant{v}};
}

UncertaintyWaveform UncertaintyWaveform::constant(Axis axis, double eps_bar) {
    return {WaveformKind::bangbang, std::abs(eps_bar), Constant{along(axis, eps_bar)}};
}

UncertaintyWaveform UncertaintyWaveform::bangbang(Axis axis, double eps,
                                                  std::vector<double> switch_times,
                                                  std::vector<int> signs) {
    require_bound(eps);
    check_switch_times(switch_times, signs.size());
    std::vector<Vec3> values;
    values.reserve(signs.size());
    for (int s : signs) {
        if (s != 1 && s != -1) throw std::invalid_argument("bang-bang signs must be +1 or -1");
        values.push_back(along(axis, s * eps));
    }
    return {WaveformKind::bangbang, eps, Piecewise{std::move(switch_times), std::move(values)}};
}

UncertaintyWaveform UncertaintyWaveform::piecewise(double bound, std::vector<double> switch_times,
                                                   std::vector<Vec3> values) {
    require_bound(bound);
    check_switch_times(switch_times, values.size());
    for (Vec3 v : values) require_within(v, bound);
    return {WaveformKind::piecewise, bound, Piecewise{std::move(switch_times), std::move(values)}};
}

UncertaintyWaveform UncertaintyWaveform::uniform_noise(Axis axis, double eps, double resample_step,
                                                       std::uint64_t seed) {
    require_bound(eps);
    if (!(resample_step > 0.0)) throw std::invalid_argument("resample step must be > 0");
    return {WaveformKind::uniform_noise, eps, Noise{axis, eps, resample_step, RngStream(seed)}};
}

UncertaintyWaveform UncertaintyWaveform::phase_flip_z(double bound, double interval,
                                                      std::vector<double> samples) {
    require_bound(bound);
    if (!(interval > 0.0) || samples.empty()) {
        throw std::invalid_argument("phase-flip waveform needs samples and interval > 0");
    }
    std::vector<Vec3> values;
    values.reserve(samples.size());
    for (double s : samples) {
        values.push_back({0.0, 0.0, s});
        require_within(values.back(), bound);
    }
    return {WaveformKind::phase_flip_z, bound, Sampled{interval, std::move(values)}};
}

UncertaintyWaveform UncertaintyWaveform::sinusoid(Axis axis, double amp, double freq,
                                                  double phase) {
    (void)along(axis, 0.0);
    return {WaveformKind::sinusoid, std::abs(amp), Sinusoid{axis, amp, freq, phase}};
}

UncertaintyWaveform UncertaintyWaveform::rotating_xy(double amp, double freq, double phase,
                                                     double rate, double gamma0) {
    return {WaveformKind::rotating_xy, std::abs(amp), Rotating{amp, freq, phase, rate, gamma0}};
}

UncertaintyWaveform UncertaintyWaveform::custom_sampled(double bound, double interval,
                                                        std::vector<Vec3> samples) {
    require_bound(bound);
    if (!(interval > 0.0) || samples.empty()) {
        throw std::invalid_argument("custom waveform needs samples and interval > 0");
    }
    for (Vec3 v : samples) require_within(v, bound);
    return {WaveformKind::custom_sampled, bound, Sampled{interval, std::move(samples)}};
}

WaveformKind UncertaintyWaveform::kind() const { return kind_; }

Vec3 UncertaintyWaveform::at(double t) const {
    struct Visitor {
        double t;
        Vec3 operator()(const None &) const { return {}; }
        Vec3 operator()(const Constant &c) const { return c.value; }
        Vec3 operator()(const Piecewise &p) const {
            auto it = std::upper_bound(p.switch_times.begin(), p.switch_times.end(), t);
            return p.values[static_cast<std::size_t>(it - p.switch_times.begin())];
        }
        Vec3 operator()(const Noise &n) const {
            std::uint64_t cell = cell_index(t, n.step);
            if (n.axis == Axis::xy) {
                double u1 = static_cast<double>(n.rng.at(2 * cell) >> 11) * 0x1.0p-53;
                double u2 = static_cast<double>(n.rng.at(2 * cell + 1) >> 11) * 0x1.0p-53;
                double radius = n.eps * std::sqrt(u1);
                double angle = 2.0 * std::numbers::pi * u2;
                return {radius * std::cos(angle), radius * std::sin(angle), 0.0};
            }
            double u = static_cast<double>(n.rng.at(cell) >> 11) * 0x1.0p-53;
            return along(n.axis, n.eps * (2.0 * u - 1.0));
        }
        Vec3 operator()(const Sampled &s) const {
            return s.samples[std::min(cell_index(t, s.interval), s.samples.size() - 1)];
        }
        Vec3 operator()(const Sinusoid &s) const {
            return along(s.axis, s.amp * std::sin(s.freq * t + s.phase));
        }
        Vec3 operator()(const Rotating &r) const {
            double m = r.amp * std::sin(r.freq * t + r.phase);
            double g = r.gamma0 + r.rate * t;
            return {m * std::cos(g), m * std::sin(g), 0.0};
        }
    };
    return std::visit(Visitor{t}, data_);
}

std::string UncertaintyWaveform::describe() const {
    std::ostringstream out;
    out << to_string(kind_) << "(bound=" << bound_;
    if (const auto *p = std::get_if<Piecewise>(&data_)) {
        out << ", segments=" << p->values.size();
    } else if (const auto *c = std::get_if<Constant>(&data_)) {
        out << ", value=(" << c->value.x << "," << c->value.y << "," << c->value.z << ")";
    } else if (const auto *n = std::get_if<Noise>(&data_)) {
        out << ", axis=" << to_string(n->axis) << ", step=" << n->step;
    }
    out << ")";
    return out.str();
}

UncertaintyWaveform random_waveform(WaveformFamily family, Axis axis, double eps, double horizon,
                                    RngStream &rng) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const bool planar = axis == Axis::xy;
    switch (family) {
        case WaveformFamily::bangbang: {
            std::size_t n_switch = static_cast<std::size_t>(rng.uniform() * 9.0);
            std::vector<double> times(n_switch);
            for (double &t : times) t = rng.uniform(0.0, horizon);
            std::sort(times.begin(), times.end());
            if (planar) {
                std::vector<Vec3> values(n_switch + 1);
                for (Vec3 &v : values) {
                    double g = rng.uniform(0.0, two_pi);
                    v = {eps * std::cos(g), eps * std::sin(g), 0.0};
                }
                return UncertaintyWaveform::piecewise(eps, std::move(times), std::move(values));
            }
            std::vector<int> signs(n_switch + 1);
            int s = rng.uniform() < 0.5 ? -1 : 1;
            for (int &sign : signs) {
                sign = s;
                s = -s;
            }
            return UncertaintyWaveform::bangbang(axis, eps, std::move(times), std::move(signs));
        }
        case WaveformFamily::uniform_noise: {
            double step = horizon / (1.0 + std::floor(rng.uniform() * 200.0));
            return UncertaintyWaveform::uniform_noise(axis, eps, step, rng());
        }
        case WaveformFamily::sinusoid: {
            double amp = eps * rng.uniform(0.5, 1.0);
            double freq = rng.uniform(0.0, 3.0);
            double phase = rng.uniform(0.0, two_pi);
            if (planar) {
                return UncertaintyWaveform::rotating_xy(amp, freq, phase, rng.uniform(-2.0, 2.0),
                                                        rng.uniform(0.0, two_pi));
            }
            return UncertaintyWaveform::sinusoid(axis, amp, freq, phase);
        }
        case WaveformFamily::co_rotating: {
            double gamma0 = rng.uniform(0.0, two_pi);
            if (planar) {
                return UncertaintyWaveform::rotating_xy(eps, 0.0, std::numbers::pi / 2, 1.0, gamma0);
            }
            // Resonant drive at the free precession frequency.
            return UncertaintyWaveform::sinusoid(axis, eps, 1.0, gamma0);
        }
    }
    throw std::invalid_argument("unknown waveform family");
}

}  // namespace qsmc
