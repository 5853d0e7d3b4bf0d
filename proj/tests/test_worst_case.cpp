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

TEST(ClosedForm, BangBangMatchesIntegration) {
    for (double e : {0.2, -0.2, 0.05, 1.5}) {
        auto traj = propagate_bloch({0, 0, 1}, {}, UncertaintyWaveform::constant(Axis::x, e),
                                    {0.0, 2.0}, {1e-4});
        for (std::size_t k = 0; k < traj.size(); k += 500) {
            BlochVector a = analytic_bangbang(e, traj[k].t);
            ASSERT_LE(norm(a - traj[k].r), 1e-9) << "eps " << e << " t " << traj[k].t;
            ASSERT_NEAR(norm(a), 1.0, 1e-14);
        }
    }
    EXPECT_THROW(analytic_bangbang(0.0, 1.0), std::invalid_argument);
}

TEST(ClosedForm, FailureProbability) {
    double w = std::sqrt(1.04);
    EXPECT_NEAR(failure_prob_bangbang(0.2, std::numbers::pi / w), single_axis_threshold(0.2), 1e-15);
    EXPECT_EQ(failure_prob_bangbang(0.2, 0.0), 0.0);
    EXPECT_NEAR(failure_prob_bangbang(0.2, 1.0), (1.0 - analytic_bangbang(0.2, 1.0).z) / 2.0, 1e-15);
    EXPECT_THROW(failure_prob_bangbang(0.2, 3.2), std::domain_error);
    EXPECT_THROW(failure_prob_bangbang(0.2, -0.1), std::domain_error);
}

TEST(Costate, MatchesClosedForm) {
    const double eps = 0.2, t_f = 2.5;
    auto lambda = integrate_costate(UncertaintyWaveform::constant(Axis::x, eps), t_f, {1e-4});
    ASSERT_EQ(lambda.size(), 25001u);
    EXPECT_EQ(lambda.back().lambda, (Vec3{0, 0, 1}));
    EXPECT_EQ(lambda.back().t, t_f);
    for (std::size_t k = 0; k < lambda.size(); k += 250) {
        CostateVector a = analytic_costate(eps, lambda[k].t, t_f);
        ASSERT_LE(norm(a - lambda[k].lambda), 1e-8) << "t " << lambda[k].t;
    }
}

TEST(Costate, HamiltonianIsConstant) {
    // lambda . r is conserved because both rotate under the same generator.
    auto w = UncertaintyWaveform::bangbang(Axis::x, 0.3, {0.4, 1.1}, {1, -1, 1});
    auto states = propagate_bloch({0, 0, 1}, {}, w, {0.0, 1.5}, {1e-4});
    auto costates = integrate_costate(w, 1.5, {1e-4});
    ASSERT_EQ(states.size(), costates.size());
    double h0 = dot(states.front().r, costates.front().lambda);
    for (std::size_t k = 0; k < states.size(); k += 100) {
        ASSERT_NEAR(dot(states[k].r, costates[k].lambda), h0, 1e-10);
    }
    EXPECT_NEAR(h0, states.back().r.z, 1e-10);
}

TEST(Switching, ClosedFormAndSign) {
    for (double eps : {0.05, 0.2, 0.8}) {
        double w = std::sqrt(1.0 + eps * eps);
        for (double frac : {0.3, 0.7, 1.0}) {
            double t_f = frac * std::numbers::pi / w;
            auto wave = UncertaintyWaveform::constant(Axis::x, eps);
            auto states = propagate_bloch({0, 0, 1}, {}, wave, {0.0, t_f}, {1e-4});
            auto costates = integrate_costate(wave, t_f, {1e-4});
            auto h = evaluate_switching(states, costates, Axis::x);
            for (std::size_t k = 0; k < h.size(); ++k) {
                double ref = switching_closed_form(eps, states[k].t, t_f);
                ASSERT_NEAR(h[k], ref, 1e-8);
                // Interior points keep one sign, so eps = +eps stays optimal.
                if (k > 0 && k + 1 < h.size()) {
                    ASSERT_LT(h[k], 0.0) << "t " << states[k].t;
                }
            }
        }
    }
}

TEST(Switching, OtherAxes) {
    std::vector<TrajectorySample> s = {{0.0, {0.1, 0.2, 0.3}, {}, {}}};
    std::vector<CostateSample> l = {{0.0, {0.4, 0.5, 0.6}}};
    EXPECT_NEAR(evaluate_switching(s, l, Axis::x)[0], dot(l[0].lambda, cross({1, 0, 0}, s[0].r)), 1e-16);
    EXPECT_NEAR(evaluate_switching(s, l, Axis::y)[0], dot(l[0].lambda, cross({0, 1, 0}, s[0].r)), 1e-16);
    EXPECT_NEAR(evaluate_switching(s, l, Axis::z)[0], dot(l[0].lambda, cross({0, 0, 1}, s[0].r)), 1e-16);
    EXPECT_THROW(evaluate_switching(s, l, Axis::xy), std::invalid_argument);
    std::vector<CostateSample> shifted = {{0.5, {0.4, 0.5, 0.6}}};
    EXPECT_THROW(evaluate_switching(s, shifted, Axis::x), std::invalid_argument);
}

TEST(BruteForce, ConstantExtremeIsOptimal) {
    BruteForceOptions opts;
    opts.n_random = 60;
    for (double t_f : {0.5, 1.0, 2.0, 3.0}) {
        WorstCaseResult r = brute_force_worst(0.2, t_f, 8, opts);
        EXPECT_EQ(r.n_enumerated, 256u);
        EXPECT_NEAR(r.z_f_min, r.analytic_z_f, 1e-12) << "t_f " << t_f;
        EXPECT_GE(r.z_random_min, r.analytic_z_f - 1e-9);
        EXPECT_TRUE(r.optimality_holds());
        // The argmin is one of the two constant extremes.
        EXPECT_EQ(norm(r.waveform.at(0.0) - r.waveform.at(t_f * 0.99)), 0.0);
    }
}

TEST(BruteForce, ManySegmentsUseSampling) {
    BruteForceOptions opts;
    opts.n_random = 0;
    WorstCaseResult r = brute_force_worst(0.2, 1.0, 24, opts);
    EXPECT_EQ(r.n_enumerated, 65536u);
    EXPECT_NEAR(r.z_f_min, r.analytic_z_f, 1e-12);
}

TEST(BruteForce, RejectsLongHorizons) {
    EXPECT_THROW(brute_force_worst(0.2, 3.2, 4), std::invalid_argument);
    EXPECT_THROW(brute_force_worst(0.0, 1.0, 4), std::invalid_argument);
    EXPECT_THROW(brute_force_worst(0.2, 1.0, 0), std::invalid_argument);
}

TEST(XyDominance, ConstantXyAgainstCoRotating) {
    for (double eps0 : {0.01, 0.2, 1.0, 3.0, -0.5}) {
        std::vector<double> ts;
        for (int k = 0; k <= 1000; ++k) ts.push_back(k * std::numbers::pi / std::abs(eps0) / 1000.0);
        ts.push_back(100.0 / std::abs(eps0));
        ComparisonReport r = compare_lemma1(eps0, 0.3, ts);
        EXPECT_EQ(r.points, 1001u);
        EXPECT_EQ(r.violations, 0u);
        EXPECT_GE(r.min_gap, -1e-12);
    }
}

TEST(SingleAxisDominance, SingleAxisAgainstCosine) {
    std::vector<double> ts;
    for (int k = 0; k <= 100; ++k) ts.push_back(k * std::numbers::pi / 0.2 / 100.0);
    ComparisonReport r = compare_lemma2(0.2, 24, ts, 5);
    EXPECT_EQ(r.points, 101u * 26u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_TRUE(r.passed());
}

TEST(Sampling, GeneralBoundAtT1) {
    SlidingModeConfig c(0.01, 0.2);
    double t1 = period_t1(c);
    auto p = sampled_failure_probabilities(Axis::xy, 0.2, t1, 200, 3);
    double worst = *std::max_element(p.begin(), p.end());
    EXPECT_LE(worst, 0.01 + 1e-6);
    // The co-rotating family (every fourth draw) saturates the bound.
    EXPECT_NEAR(worst, 0.01, 1e-6);
}

TEST(Sampling, SingleAxisBoundAtT2) {
    SlidingModeConfig c(0.01, 0.2);
    double t2 = period_t2(c);
    for (Axis axis : {Axis::x, Axis::y}) {
        auto p = sampled_failure_probabilities(axis, 0.2, t2, 200, 4);
        EXPECT_LE(*std::max_element(p.begin(), p.end()), 0.01 + 1e-6);
    }
}

TEST(WorstCaseCsv, Header) {
    BruteForceOptions opts;
    opts.n_random = 0;
    std::vector<WorstCaseResult> rows = {brute_force_worst(0.2, 1.0, 4, opts)};
    std::ostringstream out;
    write_worst_case_csv(out, rows);
    EXPECT_EQ(out.str().rfind("t_f,eps,n_segments,z_min_search,z_analytic,gap\n1,0.2,4,", 0), 0u);
}

}  // namespace
}  // namespace qsmc
