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

#include "qsmc/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qsmc {
namespace {

HamiltonianCoeffs total_coeffs(const ControlFunction &controls, const UncertaintyWaveform &noise,
                               double t, HamiltonianCoeffs *u_out = nullptr, Vec3 *e_out = nullptr) {
    HamiltonianCoeffs u = controls ? controls(t) : HamiltonianCoeffs{};
    Vec3 e = noise.at(t);
    if (!(norm(e) <= noise.bound() + 1e-12)) {
        throw std::invalid_argument("uncertainty waveform exceeds its bound at t = " +
                                    std::to_string(t));
    }
    if (u_out != nullptr) *u_out = u;
    if (e_out != nullptr) *e_out = e;
    return kFreeHamiltonian + u + HamiltonianCoeffs{e.x, e.y, e.z};
}

void require_unit(BlochVector r) {
    if (!(std::abs(norm(r) - 1.0) <= 1e-6)) {
        throw std::invalid_argument("initial Bloch vector must have unit length");
    }
}

struct Spinor {
    Complex a0, a1;
};

// -i H psi with H = (cx sx + cy sy + cz sz) / 2.
Spinor schrodinger_rhs(Spinor s, HamiltonianCoeffs c) {
    const Complex i(0.0, 1.0);
    Complex h0 = 0.5 * (c.cz * s.a0 + Complex(c.cx, -c.cy) * s.a1);
    Complex h1 = 0.5 * (Complex(c.cx, c.cy) * s.a0 - c.cz * s.a1);
    return {-i * h0, -i * h1};
}

Spinor rk4_spinor(Spinor s, HamiltonianCoeffs c, double h) {
    auto add = [](Spinor a, double w, Spinor k) { return Spinor{a.a0 + w * k.a0, a.a1 + w * k.a1}; };
    Spinor k1 = schrodinger_rhs(s, c);
    Spinor k2 = schrodinger_rhs(add(s, 0.5 * h, k1), c);
    Spinor k3 = schrodinger_rhs(add(s, 0.5 * h, k2), c);
    Spinor k4 = schrodinger_rhs(add(s, h, k3), c);
    double h6 = h / 6.0;
    return {s.a0 + h6 * (k1.a0 + 2.0 * k2.a0 + 2.0 * k3.a0 + k4.a0),
            s.a1 + h6 * (k1.a1 + 2.0 * k2.a1 + 2.0 * k3.a1 + k4.a1)};
}

}  // namespace

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("integrator dt must be > 0");
    }
}

StepGrid::StepGrid(TimeSpan span, double dt) : span_(span), dt_(dt) {
    if (!(span.length() >= 0.0)) {
        throw std::invalid_argument("time span has negative length");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    steps_ = span.length() == 0.0
                 ? 0
                 : static_cast<std::size_t>(std::ceil(span.length() / dt - 1e-9));
    if (steps_ == 0 && span.length() > 0.0) steps_ = 1;
    whole_ = std::abs(static_cast<double>(steps_) * dt - span.length()) <= 1e-9 * dt;
}

std::vector<TrajectorySample> propagate_bloch(BlochVector r0, const ControlFunction &controls,
                                              const UncertaintyWaveform &noise, TimeSpan span,
                                              const IntegratorConfig &cfg) {
    cfg.validate();
    require_unit(r0);
    StepGrid grid(span, cfg.dt);
    std::vector<TrajectorySample> out;
    out.reserve(grid.steps() + 1);
    BlochVector r = r0;
    for (std::size_t k = 0; k <= grid.steps(); ++k) {
        double t = grid.time(k);
        TrajectorySample sample{t, r, {}, {}};
        HamiltonianCoeffs c = total_coeffs(controls, noise, t, &sample.controls, &sample.noise);
        out.push_back(sample);
        if (k == grid.steps()) break;
        r = kernels::renormalized(kernels::rk4_step(r, c.axis(), grid.width(k)));
    }
    return out;
}

BlochVector evolve_bloch(BlochVector r0, const ControlFunction &controls,
                         const UncertaintyWaveform &noise, TimeSpan span,
                         const IntegratorConfig &cfg) {
    cfg.validate();
    require_unit(r0);
    StepGrid grid(span, cfg.dt);
    BlochVector r = r0;
    for (std::size_t k = 0; k < grid.steps(); ++k) {
        HamiltonianCoeffs c = total_coeffs(controls, noise, grid.time(k));
        r = kernels::renormalized(kernels::rk4_step(r, c.axis(), grid.width(k)));
    }
    return r;
}

std::vector<StateSample> propagate_schrodinger(const PureState &s0, const ControlFunction &controls,
                                               const UncertaintyWaveform &noise, TimeSpan span,
                                               const IntegratorConfig &cfg) {
    cfg.validate();
    StepGrid grid(span, cfg.dt);
    std::vector<StateSample> out;
    out.reserve(grid.steps() + 1);
    Spinor s{s0.a0(), s0.a1()};
    out.push_back({grid.time(0), s0});
    for (std::size_t k = 0; k < grid.steps(); ++k) {
        HamiltonianCoeffs c = total_coeffs(controls, noise, grid.time(k));
        s = rk4_spinor(s, c, grid.width(k));
        PureState next(s.a0, s.a1);
        s = {next.a0(), next.a1()};
        out.push_back({grid.time(k + 1), next});
    }
    return out;
}

BlochVector exact_step_constant(BlochVector r0, HamiltonianCoeffs coeffs, double t) {
    double x = r0.x, y = r0.y, z = r0.z;
    double cx = coeffs.cx, cy = coeffs.cy, cz = coeffs.cz;
    kernels::scalar_kernels().rotate({{&x, 1}, {&y, 1}, {&z, 1}}, {{&cx, 1}, {&cy, 1}, {&cz, 1}}, t);
    return {x, y, z};
}

void evolve_batch(kernels::BlochBatch &state, std::span<const UncertaintyWaveform> noise,
                  double duration, const IntegratorConfig &cfg, const ControlFunction &controls,
                  const BatchObserver &observer) {
    cfg.validate();
    if (noise.size() != state.size()) {
        throw std::invalid_argument("evolve_batch: one waveform per lane is required");
    }
    const kernels::KernelSet &kset = kernels::active_kernels();
    StepGrid grid({0.0, duration}, cfg.dt);
    kernels::CoeffBatch coeffs(state.size());
    for (std::size_t k = 0; k < grid.steps(); ++k) {
        double t = grid.time(k);
        HamiltonianCoeffs u = kFreeHamiltonian + (controls ? controls(t) : HamiltonianCoeffs{});
        for (std::size_t lane = 0; lane < state.size(); ++lane) {
            coeffs.set(lane, u + noise[lane].coeffs_at(t));
        }
        kset.rk4_step(state.lanes(), coeffs.lanes(), grid.width(k));
        kset.renormalize(state.lanes());
        if (observer) observer(k + 1, grid.time(k + 1), state);
    }
}

void write_trajectory_csv(std::ostream &out, std::span<const TrajectorySample> samples) {
    out << "t,x,y,z,ux,uy,uz,ex,ey,ez\n";
    char line[320];
    for (const TrajectorySample &s : samples) {
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      s.t, s.r.x, s.r.y, s.r.z, s.controls.cx, s.controls.cy, s.controls.cz,
                      s.noise.x, s.noise.y, s.noise.z);
        out << line;
    }
}

}  // namespace qsmc
