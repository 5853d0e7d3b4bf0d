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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qsmc/bloch.hpp"

namespace qsmc {

/// Which uncertainty directions are unknown: both eps_x and eps_y, or a single
/// axis (x or y).
enum class UncertaintyClass { general_xy, single_axis };

std::string to_string(UncertaintyClass cls);

enum class PeriodRule { t1_formula, t2_formula };

std::string to_string(PeriodRule rule);

struct PeriodDesign {
    double period = 0.0;
    PeriodRule rule_used = PeriodRule::t1_formula;
    /// p' = eps^2 / (1 + eps^2), the largest p0 the T2 formula covers.
    double p_threshold = 0.0;
};

/// p' = eps^2 / (1 + eps^2).
double single_axis_threshold(double eps);

/// T1 = arccos(1 - 2 p0) / eps. Valid for every admissible xy uncertainty.
double period_t1(const SlidingModeConfig &cfg);

/// T2 = arccos(1 - 2 (1 + 1/eps^2) p0) / sqrt(1 + eps^2). Requires
/// p0 <= p'; throws std::domain_error otherwise (use period_t1).
double period_t2(const SlidingModeConfig &cfg);

/// Selection table: general xy uncertainty always uses T1; a single axis uses
/// T2 while p0 <= p' and T1 above it.
PeriodDesign select_period(const SlidingModeConfig &cfg, UncertaintyClass cls);

struct PeriodGridPoint {
    double eps, p0, t1, t2;
    double diff() const { return t2 - t1; }
};

struct PeriodComparisonReport {
    std::vector<PeriodGridPoint> points;
    double min_diff = 0.0;
    std::size_t violations = 0;
    /// max |T2(p') - pi/sqrt(1+eps^2)| and |T1(p') - arccos((1-eps^2)/(1+eps^2))/eps|.
    double boundary_error = 0.0;
    /// min over eps of G(eps) = eps pi/sqrt(1+eps^2) - arccos((1-eps^2)/(1+eps^2)).
    double min_boundary_gap = 0.0;
    /// min of dF/dp0 over interior grid points; positive means T2 - T1 grows with p0.
    double min_derivative = 0.0;

    /// acos has infinite slope at -1, so rounding in the argument at p0 = p'
    /// shows up as roughly sqrt(machine epsilon) in boundary_error.
    bool passed() const { return violations == 0 && boundary_error <= 1e-7 && min_boundary_gap >= -1e-12; }
};

/// Evaluates T2 - T1 on every (eps, p0) pair with 0 < p0 <= p'(eps); points
/// outside that domain are skipped. A violation is T2 - T1 < -1e-12.
PeriodComparisonReport verify_t2_geq_t1(std::span<const double> eps_grid,
                                        std::span<const double> p0_grid);

/// Default grid: 50 log-spaced eps in [0.02, 2], and for each eps 50 p0
/// values p' j/50, j = 1..50.
PeriodComparisonReport verify_t2_geq_t1_default(std::size_t n_eps = 50, std::size_t n_p0 = 50);

/// CSV: eps,p0,t1,t2,diff.
void write_period_report_csv(std::ostream &out, const PeriodComparisonReport &report);

}  // namespace qsmc
