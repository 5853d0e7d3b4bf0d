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

#include "qsmc/worst_case.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qsmc/kernels.hpp"

namespace qsmc {
namespace {

double omega_of(double eps) { return std::sqrt(1.0 + eps * eps); }

constexpr WaveformFamily kFamilies[] = {WaveformFamily::bangbang, WaveformFamily::uniform_noise,
                                        WaveformFamily::sinusoid, WaveformFamily::co_rotating};

std::vector<UncertaintyWaveform> draw_waveforms(Axis axis, double eps, double horizon,
                                                std::size_t n, std::uint64_t seed) {
    RngStream root(seed);
    std::vector<UncertaintyWaveform> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng = root.split(i);
        out.push_back(random_waveform(kFamilies[i % 4], axis, eps, horizon, rng));
    }
    return out;
}

// Bang-bang waveform with merged runs for sign pattern `bits` on n segments.
UncertaintyWaveform pattern_waveform(std::uint64_t bits, std::size_t n, double eps, double t_f) {
    std::vector<double> times;
    std::vector<int> signs;
    for (std::size_t s = 0; s < n; ++s) {
        int sign = (bits >> s) & 1U ? -1 : 1;
        if (signs.empty() || signs.back() != sign) {
            if (!signs.empty()) times.push_back(t_f * static_cast<double>(s) / static_cast<double>(n));
            signs.push_back(sign);
        }
    }
    return UncertaintyWaveform::bangbang(Axis::x, eps, std::move(times), std::move(signs));
}

}  // namespace

BlochVector analytic_bangbang(double eps_bar, double t) {
    if (eps_bar == 0.0) throw std::invalid_argument("analytic_bangbang: eps_bar must be nonzero");
    double e2 = eps_bar * eps_bar;
    double w = omega_of(eps_bar);
    double cw = std::cos(w * t);
    return {-eps_bar / (1.0 + e2) * (cw - 1.0), -eps_bar / w * std::sin(w * t),
            e2 / (1.0 + e2) * cw + 1.0 / (1.0 + e2)};
}

double failure_prob_bangbang(double eps, double t) {
    double w = omega_of(eps);
    if (t < 0.0 || t > std::numbers::pi / w * (1.0 + 1e-12)) {
        throw std::domain_error("failure_prob_bangbang: t must lie in [0, pi/sqrt(1+eps^2)]");
    }
    double e2 = eps * eps;
    return e2 / (1.0 + e2) * (1.0 - std::cos(w * t)) / 2.0;
}

std::vector<CostateSample> integrate_costate(const UncertaintyWaveform &waveform, double t_f,
                                             const IntegratorConfig &cfg) {
    cfg.validate();
    StepGrid grid({0.0, t_f}, cfg.dt);
    std::vector<CostateSample> out(grid.steps() + 1);
    CostateVector lambda{0.0, 0.0, 1.0};
    out.back() = {grid.time(grid.steps()), lambda};
    for (std::size_t k = grid.steps(); k-- > 0;) {
        HamiltonianCoeffs c = kFreeHamiltonian + waveform.coeffs_at(grid.time(k));
        lambda = kernels::renormalized(kernels::rk4_step(lambda, c.axis(), -grid.width(k)));
        out[k] = {grid.time(k), lambda};
    }
    return out;
}

CostateVector analytic_costate(double eps_bar, double t, double t_f) {
    double e2 = eps_bar * eps_bar;
    double w = omega_of(eps_bar);
    double tau = t_f - t;
    return {-eps_bar / (1.0 + e2) * std::cos(w * tau) + eps_bar / (1.0 + e2),
            eps_bar / w * std::sin(w * tau), e2 / (1.0 + e2) * std::cos(w * tau) + 1.0 / (1.0 + e2)};
}

std::vector<double> evaluate_switching(std::span<const TrajectorySample> states,
                                       std::span<const CostateSample> costates, Axis axis) {
    if (states.size() != costates.size()) {
        throw std::invalid_argument("evaluate_switching: trajectories must share a grid");
    }
    std::vector<double> h(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (std::abs(states[k].t - costates[k].t) > 1e-12) {
            throw std::invalid_argument("evaluate_switching: sample times differ");
        }
        BlochVector r = states[k].r;
        CostateVector l = costates[k].lambda;
        switch (axis) {
            case Axis::x:
                h[k] = l.z * r.y - l.y * r.z;
                break;
            case Axis::y:
                h[k] = l.x * r.z - l.z * r.x;
                break;
            case Axis::z:
                h[k] = l.y * r.x - l.x * r.y;
                break;
            case Axis::xy:
                throw std::invalid_argument("evaluate_switching: pick a single axis");
        }
    }
    return h;
}

double switching_closed_form(double eps_bar, double t, double t_f) {
    double e2 = eps_bar * eps_bar;
    double w = omega_of(eps_bar);
    return -eps_bar / (w * w * w) *
           (std::sin(w * t) + e2 * std::sin(w * t_f) + std::sin(w * (t_f - t)));
}

WorstCaseResult brute_force_worst(double eps, double t_f, std::size_t n_segments,
                                  const BruteForceOptions &opts) {
    if (!(eps > 0.0)) throw std::invalid_argument("brute_force_worst: eps must be > 0");
    if (n_segments == 0) throw std::invalid_argument("brute_force_worst: need at least one segment");
    if (!(t_f >= 0.0) || t_f > std::numbers::pi / omega_of(eps) * (1.0 + 1e-12)) {
        throw std::invalid_argument("brute_force_worst: t_f must lie in [0, pi/sqrt(1+eps^2)]");
    }
    WorstCaseResult result;
    result.t_f = t_f;
    result.eps = eps;
    result.n_segments = n_segments;
    result.analytic_z_f = analytic_bangbang(eps, t_f).z;

    std::vector<std::uint64_t> patterns;
    if (n_segments <= 20) {
        patterns.resize(std::size_t{1} << n_segments);
        for (std::size_t i = 0; i < patterns.size(); ++i) patterns[i] = i;
    } else {
        RngStream rng = RngStream(opts.seed).split(0xb17);
        patterns.resize(std::size_t{1} << 16);
        patterns[0] = 0;
        patterns[1] = ~std::uint64_t{0};
        for (std::size_t i = 2; i < patterns.size(); ++i) patterns[i] = rng();
    }

    const kernels::KernelSet &kset = kernels::active_kernels();
    kernels::BlochBatch batch(patterns.size());
    kernels::CoeffBatch coeffs(patterns.size());
    const double seg = t_f / static_cast<double>(n_segments);
    for (std::size_t s = 0; s < n_segments; ++s) {
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            double sign = (patterns[i] >> s) & 1U ? -1.0 : 1.0;
            coeffs.set(i, {sign * eps, 0.0, 1.0});
        }
        kset.rotate(batch.lanes(), coeffs.lanes(), seg);
    }
    auto z = batch.z();
    std::size_t best = static_cast<std::size_t>(std::min_element(z.begin(), z.end()) - z.begin());
    result.z_f_min = z[best];
    result.waveform = pattern_waveform(patterns[best], n_segments, eps, t_f);
    result.n_enumerated = patterns.size();

    result.n_random = opts.n_random;
    if (opts.n_random > 0) {
        auto waves = draw_waveforms(Axis::x, eps, t_f, opts.n_random, opts.seed);
        kernels::BlochBatch rnd(waves.size());
        evolve_batch(rnd, waves, t_f, opts.integrator);
        auto zr = rnd.z();
        result.z_random_min = *std::min_element(zr.begin(), zr.end());
    }
    return result;
}

ComparisonReport compare_lemma1(double eps0, double gamma0, std::span<const double> t_grid) {
    if (eps0 == 0.0) throw std::invalid_argument("compare_lemma1: eps0 must be nonzero");
    // Both closed forms are independent of gamma0.
    (void)gamma0;
    const double e2 = eps0 * eps0;
    const double w0 = omega_of(eps0);
    const double t_max = std::numbers::pi / std::abs(eps0);
    ComparisonReport report;
    report.min_gap = std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        if (t < 0.0 || t > t_max * (1.0 + 1e-12)) continue;
        double za = e2 / (1.0 + e2) * std::cos(w0 * t) + 1.0 / (1.0 + e2);
        double zb = std::cos(eps0 * t);
        double gap = za - zb;
        ++report.points;
        if (gap < -1e-12) ++report.violations;
        if (gap < report.min_gap) {
            report.min_gap = gap;
            report.worst_t = t;
        }
    }
    return report;
}

ComparisonReport compare_lemma2(double eps, std::size_t waveform_samples,
                                std::span<const double> t_grid, std::uint64_t seed,
                                const IntegratorConfig &cfg) {
    if (!(eps > 0.0)) throw std::invalid_argument("compare_lemma2: eps must be > 0");
    cfg.validate();
    const double t_max = std::numbers::pi / eps;
    StepGrid grid({0.0, t_max}, cfg.dt);
    std::vector<char> check(grid.steps() + 1, 0);
    for (double t : t_grid) {
        if (t < 0.0 || t > t_max * (1.0 + 1e-12)) continue;
        auto k = static_cast<std::size_t>(std::llround(t / cfg.dt));
        check[std::min(k, grid.steps())] = 1;
    }

    ComparisonReport report;
    report.min_gap = std::numeric_limits<double>::infinity();
    auto record = [&](double za, double t) {
        double gap = za - std::cos(eps * t);
        ++report.points;
        if (gap < -1e-6) ++report.violations;
        if (gap < report.min_gap) {
            report.min_gap = gap;
            report.worst_t = t;
        }
    };

    // Deterministic members first: the constant extreme and eps(t) = 0.
    std::vector<UncertaintyWaveform> waves;
    waves.push_back(UncertaintyWaveform::constant(Axis::x, eps));
    waves.push_back(UncertaintyWaveform::uniform_noise(Axis::x, 0.0, 1.0, 0));
    auto random = draw_waveforms(Axis::x, eps, t_max, waveform_samples, seed);
    waves.insert(waves.end(), random.begin(), random.end());

    kernels::BlochBatch batch(waves.size());
    if (check[0]) {
        for (std::size_t i = 0; i < batch.size(); ++i) record(batch.get(i).z, 0.0);
    }
    evolve_batch(batch, waves, t_max, cfg, {},
                 [&](std::size_t step, double t, const kernels::BlochBatch &b) {
                     if (!check[step]) return;
                     for (std::size_t i = 0; i < b.size(); ++i) record(b.get(i).z, t);
                 });
    return report;
}

std::vector<double> sampled_failure_probabilities(Axis axis, double eps, double t, std::size_t n,
                                                  std::uint64_t seed, const IntegratorConfig &cfg) {
    auto waves = draw_waveforms(axis, eps, t, n, seed);
    kernels::BlochBatch batch(waves.size());
    evolve_batch(batch, waves, t, cfg);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = failure_probability(batch.get(i));
    return out;
}

void write_worst_case_csv(std::ostream &out, std::span<const WorstCaseResult> rows) {
    out << "t_f,eps,n_segments,z_min_search,z_analytic,gap\n";
    char line[200];
    for (const WorstCaseResult &r : rows) {
        std::snprintf(line, sizeof line, "%.12g,%.12g,%zu,%.12g,%.12g,%.12g\n", r.t_f, r.eps,
                      r.n_segments, r.z_min_search(), r.analytic_z_f, r.gap());
        out << line;
    }
}

}  // namespace qsmc
