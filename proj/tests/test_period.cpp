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

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qsmc/period.hpp"
#include "qsmc/worst_case.hpp"

namespace qsmc {
namespace {

TEST(Period, ReferenceValues) {
    EXPECT_NEAR(period_t1({0.01, 0.02}), 10.017, 0.001);
    EXPECT_NEAR(period_t1({0.01, 0.2}), 1.002, 0.001);
    EXPECT_NEAR(period_t2({0.01, 0.2}), 1.049, 0.001);
    EXPECT_NEAR(single_axis_threshold(0.2), 0.0385, 0.0001);
    // Independent evaluation of the closed forms.
    EXPECT_NEAR(period_t1({0.01, 0.2}), std::acos(0.98) / 0.2, 1e-14);
    EXPECT_NEAR(period_t2({0.01, 0.2}), std::acos(1.0 - 2.0 * 26.0 * 0.01) / std::sqrt(1.04), 1e-14);
    EXPECT_NEAR(period_t2({0.005, 0.2}), std::acos(0.74) / std::sqrt(1.04), 1e-14);
}

TEST(Period, SelectionTable) {
    PeriodDesign xy = select_period({0.01, 0.02}, UncertaintyClass::general_xy);
    EXPECT_EQ(xy.rule_used, PeriodRule::t1_formula);
    EXPECT_NEAR(xy.period, 10.017, 0.001);

    PeriodDesign x = select_period({0.01, 0.2}, UncertaintyClass::single_axis);
    EXPECT_EQ(x.rule_used, PeriodRule::t2_formula);
    EXPECT_NEAR(x.period, 1.049, 0.001);
    EXPECT_NEAR(x.p_threshold, 0.0385, 0.0001);

    // Above p' a single axis falls back to T1.
    PeriodDesign high = select_period({0.1, 0.2}, UncertaintyClass::single_axis);
    EXPECT_EQ(high.rule_used, PeriodRule::t1_formula);
    EXPECT_EQ(high.period, period_t1({0.1, 0.2}));
    EXPECT_EQ(to_string(PeriodRule::t2_formula), "T2");
}

TEST(Period, T2OutsideItsDomain) {
    EXPECT_THROW(period_t2({0.05, 0.2}), std::domain_error);
    double edge = single_axis_threshold(0.2);
    EXPECT_NEAR(period_t2({edge, 0.2}), std::numbers::pi / std::sqrt(1.04), 1e-7);
}

TEST(Period, Monotonicity) {
    double prev = 0.0;
    for (double p0 = 0.001; p0 < 0.5; p0 += 0.01) {
        double t = period_t1({p0, 0.3});
        EXPECT_GT(t, prev);
        prev = t;
    }
    prev = 1e9;
    for (double eps = 0.01; eps < 3.0; eps *= 1.3) {
        double t = period_t1({0.01, eps});
        EXPECT_LT(t, prev);
        prev = t;
    }
    prev = 0.0;
    double edge = single_axis_threshold(0.5);
    for (int j = 1; j <= 20; ++j) {
        double t = period_t2({edge * j / 20.0, 0.5});
        EXPECT_GT(t, prev);
        prev = t;
    }
}

TEST(Period, ZenoLimit) {
    // T -> 0 as p0 -> 0, with T1 ~ 2 sqrt(p0) / eps.
    for (double p0 : {1e-4, 1e-6, 1e-8}) {
        double t1 = period_t1({p0, 0.2});
        EXPECT_NEAR(t1 / (2.0 * std::sqrt(p0) / 0.2), 1.0, 1e-3);
        EXPECT_LT(period_t2({p0, 0.2}), 3.0 * std::sqrt(p0) / 0.2 + 1e-3);
    }
    EXPECT_LT(period_t1({1e-10, 0.2}), 1e-3);
}

TEST(Period, PeriodsAreSound) {
    // The saturating evolutions reach exactly p0 at the designed period.
    for (double eps : {0.05, 0.2, 1.0}) {
        for (double p0 : {1e-4, 1e-3, single_axis_threshold(eps) / 2}) {
            SlidingModeConfig c(p0, eps);
            double t1 = period_t1(c);
            EXPECT_NEAR((1.0 - std::cos(eps * t1)) / 2.0, p0, 1e-12);
            double t2 = period_t2(c);
            EXPECT_NEAR(failure_prob_bangbang(eps, t2), p0, 1e-12);
            EXPECT_GE(t2, t1);
        }
    }
}

TEST(Period, InequalityGrid) {
    PeriodComparisonReport r = verify_t2_geq_t1_default(50, 50);
    EXPECT_EQ(r.points.size(), 2500u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_GT(r.min_diff, 0.0);
    EXPECT_GT(r.min_boundary_gap, 0.0);
    EXPECT_GT(r.min_derivative, 0.0);
    EXPECT_LE(r.boundary_error, 1e-7);
    EXPECT_TRUE(r.passed());
}

TEST(Period, InequalitySkipsInvalidPoints) {
    double eps[] = {0.2};
    double p0s[] = {0.01, 0.03, 0.05, 0.5};
    PeriodComparisonReport r = verify_t2_geq_t1(eps, p0s);
    EXPECT_EQ(r.points.size(), 2u);
    EXPECT_NEAR(r.points[0].diff(), 1.0494 - 1.0017, 1e-4);
}

TEST(Period, ReportCsv) {
    double eps[] = {0.2};
    double p0s[] = {0.01};
    std::ostringstream out;
    write_period_report_csv(out, verify_t2_geq_t1(eps, p0s));
    EXPECT_EQ(out.str().rfind("eps,p0,t1,t2,diff\n0.2,0.01,1.0016742116", 0), 0u);
}

}  // namespace
}  // namespace qsmc
