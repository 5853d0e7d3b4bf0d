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

#include "qsmc/period.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qsmc {
namespace {

double safe_acos(double v) { return std::acos(std::clamp(v, -1.0, 1.0)); }

double t1_raw(double p0, double eps) { return safe_acos(1.0 - 2.0 * p0) / eps; }

double t2_raw(double p0, double eps) {
    return safe_acos(1.0 - 2.0 * (1.0 + 1.0 / (eps * eps)) * p0) / std::sqrt(1.0 + eps * eps);
}

// dT2/dp0 - dT1/dp0 for p0 strictly inside (0, p').
double gap_derivative(double p0, double eps) {
    double e2 = eps * eps;
    return 1.0 / std::sqrt(e2 * p0 - (1.0 + e2) * p0 * p0) - 1.0 / std::sqrt(e2 * p0 - e2 * p0 * p0);
}

// G(eps) = eps pi / sqrt(1 + eps^2) - arccos((1 - eps^2) / (1 + eps^2)).
double boundary_gap(double eps) {
    double e2 = eps * eps;
    return eps * std::numbers::pi / std::sqrt(1.0 + e2) - safe_acos((1.0 - e2) / (1.0 + e2));
}

}  // namespace

std::string to_string(UncertaintyClass cls) {
    return cls == UncertaintyClass::general_xy ? "general-xy" : "single-axis";
}

std::string to_string(PeriodRule rule) { return rule == PeriodRule::t1_formula ? "T1" : "T2"; }

double single_axis_threshold(double eps) { return eps * eps / (1.0 + eps * eps); }

double period_t1(const SlidingModeConfig &cfg) { return t1_raw(cfg.p0(), cfg.eps()); }

double period_t2(const SlidingModeConfig &cfg) {
    double threshold = single_axis_threshold(cfg.eps());
    // Relative slack so p0 = p' computed by the caller is accepted.
    if (cfg.p0() > threshold * (1.0 + 1e-12)) {
        char msg[200];
        std::snprintf(msg, sizeof msg,
                      "T2 formula needs p0 <= eps^2/(1+eps^2) = %.6g (got p0 = %.6g); use T1",
                      threshold, cfg.p0());
        throw std::domain_error(msg);
    }
    return t2_raw(cfg.p0(), cfg.eps());
}

PeriodDesign select_period(const SlidingModeConfig &cfg, UncertaintyClass cls) {
    PeriodDesign out;
    out.p_threshold = single_axis_threshold(cfg.eps());
    if (cls == UncertaintyClass::single_axis && cfg.p0() <= out.p_threshold) {
        out.period = period_t2(cfg);
        out.rule_used = PeriodRule::t2_formula;
    } else {
        out.period = period_t1(cfg);
        out.rule_used = PeriodRule::t1_formula;
    }
    return out;
}

PeriodComparisonReport verify_t2_geq_t1(std::span<const double> eps_grid,
                                        std::span<const double> p0_grid) {
    PeriodComparisonReport report;
    report.min_diff = std::numeric_limits<double>::infinity();
    report.min_boundary_gap = std::numeric_limits<double>::infinity();
    report.min_derivative = std::numeric_limits<double>::infinity();
    for (double eps : eps_grid) {
        double threshold = single_axis_threshold(eps);
        for (double p0 : p0_grid) {
            if (!(p0 > 0.0) || p0 > threshold * (1.0 + 1e-12)) continue;
            PeriodGridPoint pt{eps, p0, t1_raw(p0, eps), t2_raw(p0, eps)};
            report.min_diff = std::min(report.min_diff, pt.diff());
            if (pt.diff() < -1e-12) ++report.violations;
            if (p0 < threshold * (1.0 - 1e-9)) {
                report.min_derivative = std::min(report.min_derivative, gap_derivative(p0, eps));
            }
            report.points.push_back(pt);
        }
        double e2 = eps * eps;
        double t2_edge = t2_raw(threshold, eps);
        double t1_edge = t1_raw(threshold, eps);
        report.boundary_error = std::max(
            {report.boundary_error, std::abs(t2_edge - std::numbers::pi / std::sqrt(1.0 + e2)),
             std::abs(t1_edge - safe_acos((1.0 - e2) / (1.0 + e2)) / eps)});
        report.min_boundary_gap = std::min(report.min_boundary_gap, boundary_gap(eps));
    }
    return report;
}

PeriodComparisonReport verify_t2_geq_t1_default(std::size_t n_eps, std::size_t n_p0) {
    PeriodComparisonReport all;
    all.min_diff = std::numeric_limits<double>::infinity();
    all.min_boundary_gap = std::numeric_limits<double>::infinity();
    all.min_derivative = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_eps; ++i) {
        double frac = n_eps > 1 ? static_cast<double>(i) / static_cast<double>(n_eps - 1) : 0.0;
        double eps = 0.02 * std::pow(100.0, frac);
        double threshold = single_axis_threshold(eps);
        std::vector<double> p0s(n_p0);
        for (std::size_t j = 0; j < n_p0; ++j) {
            p0s[j] = threshold * static_cast<double>(j + 1) / static_cast<double>(n_p0);
        }
        p0s.back() = threshold;
        double eps_one[] = {eps};
        PeriodComparisonReport part = verify_t2_geq_t1(eps_one, p0s);
        all.points.insert(all.points.end(), part.points.begin(), part.points.end());
        all.min_diff = std::min(all.min_diff, part.min_diff);
        all.violations += part.violations;
        all.boundary_error = std::max(all.boundary_error, part.boundary_error);
        all.min_boundary_gap = std::min(all.min_boundary_gap, part.min_boundary_gap);
        all.min_derivative = std::min(all.min_derivative, part.min_derivative);
    }
    return all;
}

void write_period_report_csv(std::ostream &out, const PeriodComparisonReport &report) {
    out << "eps,p0,t1,t2,diff\n";
    char line[200];
    for (const PeriodGridPoint &p : report.points) {
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g\n", p.eps, p.p0, p.t1, p.t2,
                      p.diff());
        out << line;
    }
}

}  // namespace qsmc
