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

// Worst-case uncertainty analysis for a state held at |0>.
//
// With eps(t) treated as a control that minimizes the final z, the minimum
// principle gives a bang-bang optimum, and for t_f <= pi/sqrt(1+eps^2) the
// switching function never changes sign, so the constant extreme eps(t) = +-eps
// is the worst case. This module provides the closed forms, the costate and
// switching-function machinery, and brute-force oracles that check the claim
// by enumeration and random search.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qsmc/bloch.hpp"
#include "qsmc/dynamics.hpp"
#include "qsmc/waveform.hpp"

namespace qsmc {

using CostateVector = Vec3;

struct CostateSample {
    double t = 0.0;
    CostateVector lambda;
};

/// Closed-form Bloch vector from |0> under H = I_z + eps_bar I_x.
BlochVector analytic_bangbang(double eps_bar, double t);

/// eps^2/(1+eps^2) (1 - cos(omega t))/2 with omega = sqrt(1+eps^2), the
/// failure probability of the constant extreme. Defined on [0, pi/omega].
double failure_prob_bangbang(double eps, double t);

/// Integrates d(lambda)/dt = c(t) x lambda backwards from lambda(t_f) =
/// (0,0,1), with c = H0 + waveform held on the same step grid as
/// propagate_bloch over [0, t_f]. Samples are returned in increasing time.
std::vector<CostateSample> integrate_costate(const UncertaintyWaveform &waveform, double t_f,
                                             const IntegratorConfig &cfg);

/// Closed-form costate for constant eps_bar.
CostateVector analytic_costate(double eps_bar, double t, double t_f);

/// h(t) = d(Pontryagin Hamiltonian)/d(eps_axis); for the x axis
/// h = lambda3 y - lambda2 z. Trajectories must share the time grid.
std::vector<double> evaluate_switching(std::span<const TrajectorySample> states,
                                       std::span<const CostateSample> costates,
                                       Axis axis = Axis::x);

/// -eps_bar/omega^3 [sin(omega t) + eps^2 sin(omega t_f) + sin(omega (t_f - t))].
double switching_closed_form(double eps_bar, double t, double t_f);

struct WorstCaseResult {
    /// Minimal final z over the enumerated bang-bang waveforms.
    double z_f_min = 1.0;
    /// A waveform attaining z_f_min.
    UncertaintyWaveform waveform = UncertaintyWaveform::none();
    /// Final z of the constant extreme.
    double analytic_z_f = 1.0;
    /// Minimal final z over the random bounded waveforms.
    double z_random_min = 1.0;
    std::size_t n_enumerated = 0;
    std::size_t n_random = 0;
    double t_f = 0.0;
    double eps = 0.0;
    std::size_t n_segments = 0;

    double z_min_search() const { return std::min(z_f_min, z_random_min); }
    double gap() const { return z_min_search() - analytic_z_f; }
    /// Neither search beats the constant extreme by more than 1e-6.
    bool optimality_holds() const { return gap() >= -1e-6; }
};

struct BruteForceOptions {
    std::size_t n_random = 200;
    std::uint64_t seed = 1;
    IntegratorConfig integrator;
};

/// Enumerates all 2^n_segments sign patterns of +-eps along x on equal
/// segments of [0, t_f] (exact rotations per segment; above 20 segments a
/// random subset of 2^16 patterns), then runs n_random bounded waveforms from
/// the bang-bang, uniform-noise, sinusoid and resonant families through RK4.
/// Requires t_f <= pi/sqrt(1+eps^2).
WorstCaseResult brute_force_worst(double eps, double t_f, std::size_t n_segments,
                                  const BruteForceOptions &opts = {});

struct ComparisonReport {
    std::size_t points = 0;
    std::size_t violations = 0;
    /// min over points of z^A - z^B.
    double min_gap = 0.0;
    double worst_t = 0.0;

    bool passed() const { return violations == 0; }
};

/// z^A = eps0^2/(1+eps0^2) cos(omega0 t) + 1/(1+eps0^2) against z^B =
/// cos(eps0 t); a violation is z^A < z^B - 1e-12. Times outside
/// [0, pi/|eps0|] are skipped.
ComparisonReport compare_lemma1(double eps0, double gamma0, std::span<const double> t_grid);

/// Simulates H = I_z + eps(t) I_x from |0> for random admissible waveforms
/// and compares with cos(eps t) at the grid times (rounded to the step grid)
/// inside [0, pi/eps]; a violation is z^A < cos(eps t) - 1e-6.
ComparisonReport compare_lemma2(double eps, std::size_t waveform_samples,
                                std::span<const double> t_grid, std::uint64_t seed = 7,
                                const IntegratorConfig &cfg = {});

/// Failure probability at time t from |0> for `n` random admissible waveforms
/// along `axis` (x, y, or xy), cycling through the four families.
std::vector<double> sampled_failure_probabilities(Axis axis, double eps, double t, std::size_t n,
                                                  std::uint64_t seed,
                                                  const IntegratorConfig &cfg = {});

/// CSV: t_f,eps,n_segments,z_min_search,z_analytic,gap.
void write_worst_case_csv(std::ostream &out, std::span<const WorstCaseResult> rows);

}  // namespace qsmc
