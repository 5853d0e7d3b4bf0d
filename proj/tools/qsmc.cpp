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

// qsmc: design periods and drives, run the measurement protocol, and check
// the worst-case analysis from the command line.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or config error,
// 3 design failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsmc/io.hpp"
#include "qsmc/lyapunov.hpp"
#include "qsmc/period.hpp"
#include "qsmc/protocol.hpp"
#include "qsmc/worst_case.hpp"

namespace {

using namespace qsmc;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kDesignFailed = 3;

struct GlobalOptions {
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string out = ".";
    double dt = 1e-4;
    bool dt_given = false;
};

std::filesystem::path out_path(const GlobalOptions &g, const std::string &name) {
    std::filesystem::create_directories(g.out);
    return std::filesystem::path(g.out) / name;
}

std::ofstream open_out(const std::filesystem::path &p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
}

// design-period

struct PeriodArgs {
    double p0 = 0.0;
    double eps = 0.0;
    std::string cls;
};

int cmd_design_period(const PeriodArgs &a) {
    SlidingModeConfig smc(a.p0, a.eps);
    auto [cls, axis] = parse_uncertainty_class(a.cls);
    (void)axis;
    PeriodDesign d = select_period(smc, cls);
    std::printf("T=%.3f\n", d.period);
    std::printf("T_exact=%.12g\n", d.period);
    std::printf("rule=%s\n", d.rule_used == PeriodRule::t1_formula ? "T1" : "T2");
    std::printf("p_threshold=%.4f\n", d.p_threshold);
    std::printf("class=%s\n", to_string(cls).c_str());
    return kOk;
}

// design-drive

struct DriveArgs {
    std::string initial = "1";
    double gain = 100.0;
    std::optional<double> terminal_p;
    double max_time = 1.0;
    double p0 = 0.01;
    bool time_optimal = false;
    double umax = 100.0;
};

void write_drive_charts(const GlobalOptions &g, const std::vector<TrajectorySample> &traj) {
    ChartSeries prob{"|<0|psi>|^2", {}, {}};
    ChartSeries ux{"u_x", {}, {}}, uy{"u_y", {}, {}};
    for (const TrajectorySample &s : traj) {
        prob.x.push_back(s.t);
        prob.y.push_back(1.0 - failure_probability(s.r));
    }
    // The last sample closes the trajectory and carries no control.
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        ux.x.push_back(traj[k].t);
        ux.y.push_back(traj[k].controls.cx);
        uy.x.push_back(traj[k].t);
        uy.y.push_back(traj[k].controls.cy);
    }
    auto f = open_out(out_path(g, "probability.svg"));
    write_svg_chart(f, {prob}, {"Population of |0>", "t", "probability", 720, 440, std::pair{0.0, 1.0}});
    auto c = open_out(out_path(g, "control.svg"));
    write_svg_chart(c, {ux, uy}, {"Control value", "t", "u", 720, 440, std::nullopt});
}

int cmd_design_drive(const GlobalOptions &g, const DriveArgs &a) {
    ControlTrace trace;
    std::vector<TrajectorySample> traj;
    PureState initial = parse_initial_state(a.initial);
    if (a.time_optimal) {
        TimeOptimalReference ref = time_optimal_reference(a.umax, g.dt);
        trace = ref.trace;
        traj = replay_trace(trace, initial, UncertaintyWaveform::none());
        std::printf("segments=%zu\n", ref.segments.size());
        for (const ControlSegment &s : ref.segments) {
            std::printf("segment=[%.4f,%.4f] u_y=%g\n", s.t_begin, s.t_end, s.u);
        }
    } else {
        LyapunovConfig lc;
        lc.ky = a.gain;
        lc.terminal_p = a.terminal_p;
        lc.max_time = a.max_time;
        SlidingModeConfig smc(a.p0, 1.0);
        DriveDesign d = design_drive(initial, lc, IntegratorConfig{g.dt}, smc);
        trace = d.trace;
        traj = std::move(d.trajectory);
    }
    {
        auto f = open_out(out_path(g, "drive_trace.txt"));
        write_control_trace(f, trace);
        auto c = open_out(out_path(g, "drive_trajectory.csv"));
        write_trajectory_csv(c, traj);
    }
    write_drive_charts(g, traj);
    std::printf("duration=%.4f\n", trace.duration());
    std::printf("steps=%zu\n", trace.samples.size());
    std::printf("final_population=%.6f\n", 1.0 - failure_probability(traj.back().r));
    return kOk;
}

// run-protocol

int cmd_run_protocol(const GlobalOptions &g, const std::string &path) {
    KeyValueConfig kv = KeyValueConfig::load(path);
    ProtocolConfig cfg = protocol_config_from(kv);
    if (g.seed_given) cfg.seed = g.seed;
    if (g.dt_given) cfg.integrator.dt = g.dt;
    ProtocolStats stats = run_protocol(cfg);
    {
        auto f = open_out(out_path(g, "protocol.csv"));
        write_protocol_csv(f, stats);
    }
    ChartSeries rates{"failure rate", {}, {}};
    ChartSeries bound{"p0", {}, {}};
    std::vector<double> per_cycle = stats.cycle_failure_rates();
    for (std::size_t c = 0; c < per_cycle.size(); ++c) {
        rates.x.push_back(static_cast<double>(c + 1));
        rates.y.push_back(per_cycle[c]);
        bound.x.push_back(static_cast<double>(c + 1));
        bound.y.push_back(cfg.smc.p0());
    }
    auto svg = open_out(out_path(g, "cycle_failure_rate.svg"));
    write_svg_chart(svg, {rates, bound},
                    {"Failure rate per measurement cycle", "cycle", "rate", 720, 440, std::nullopt});

    std::printf("period=%.6f rule=%s\n", stats.period,
                stats.rule_used == PeriodRule::t1_formula ? "T1" : "T2");
    std::printf("drive_duration=%.4f recovery_duration=%.4f\n", stats.drive_duration,
                stats.recovery_duration);
    std::printf("total=%zu failures=%zu recoveries=%zu\n", stats.total, stats.failures,
                stats.recoveries);
    std::printf("rate=%.6f ci95=%.6f\n", stats.rate(), stats.ci95());
    std::printf("rate_excluding_recovery=%.6f ci95=%.6f\n", stats.rate_excluding_recovery(),
                stats.ci95_excluding_recovery());
    std::printf("max_hold_failure_prob=%.8f\n", stats.max_hold_failure_prob);
    std::fprintf(stderr, "wall_seconds=%.3f\n", stats.wall_seconds);
    return kOk;
}

// verify

struct VerifyArgs {
    bool quick = false;
    std::optional<double> eps;
    std::optional<double> p0;
};

class Report {
public:
    void check(const std::string &name, bool ok, const std::string &detail) {
        std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!ok) failed_.push_back(name);
    }
    int finish() const {
        if (failed_.empty()) {
            std::printf("all checks passed\n");
            return kOk;
        }
        std::string names;
        for (const auto &n : failed_) names += (names.empty() ? "" : ", ") + n;
        std::printf("failed: %s\n", names.c_str());
        return kVerifyFailed;
    }

private:
    std::vector<std::string> failed_;
};

std::string format(const char *fmt, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

int cmd_verify(const GlobalOptions &g, const VerifyArgs &a) {
    Report report;
    IntegratorConfig icfg{g.dt};

    if (a.eps || a.p0) {
        SlidingModeConfig smc(a.p0.value_or(0.01), a.eps.value_or(0.2));
        double t1 = period_t1(smc);
        bool valid = smc.p0() <= single_axis_threshold(smc.eps());
        if (valid) {
            double t2 = period_t2(smc);
            report.check("spot-check", t2 >= t1,
                         format("eps=%g p0=%g T1=%.4f T2=%.4f T2-T1=%.4f", smc.eps(), smc.p0(), t1,
                                t2, t2 - t1));
        } else {
            std::printf("SKIP spot-check: p0=%g above p'=%.4f, only T1=%.4f applies\n", smc.p0(),
                        single_axis_threshold(smc.eps()), t1);
        }
    }

    std::size_t grid = a.quick ? 12 : 50;
    PeriodComparisonReport pr = verify_t2_geq_t1_default(grid, grid);
    report.check("period-inequality", pr.passed(),
                 format("%zu points, %zu violations, min T2-T1=%.3g", pr.points.size(),
                        pr.violations, pr.min_diff));

    {
        std::size_t points = 0, violations = 0;
        for (double eps0 : {0.02, 0.2, 0.5, 1.0, 2.0}) {
            std::vector<double> ts;
            double t_max = std::numbers::pi / eps0;
            for (int k = 0; k <= 400; ++k) ts.push_back(t_max * k / 400.0);
            for (double gamma : {0.0, 1.0, 2.5}) {
                ComparisonReport r = compare_lemma1(eps0, gamma, ts);
                points += r.points;
                violations += r.violations;
            }
        }
        report.check("xy-dominance", violations == 0,
                     format("%zu points, %zu violations", points, violations));
    }

    {
        std::vector<double> ts;
        double t_max = std::numbers::pi / 0.2;
        for (int k = 0; k <= 200; ++k) ts.push_back(t_max * k / 200.0);
        ComparisonReport r = compare_lemma2(0.2, a.quick ? 16 : 100, ts, g.seed, icfg);
        report.check("single-axis-dominance", r.passed(),
                     format("%zu points, %zu violations, min gap=%.3g", r.points, r.violations,
                            r.min_gap));
    }

    {
        BruteForceOptions opts;
        opts.n_random = a.quick ? 50 : 200;
        opts.seed = g.seed;
        opts.integrator = icfg;
        WorstCaseResult w = brute_force_worst(0.2, 1.0, a.quick ? 8 : 10, opts);
        report.check("worst-case-search", w.optimality_holds() && std::abs(w.z_f_min - w.analytic_z_f) <= 1e-6,
                     format("%zu patterns + %zu random, min z=%.9f, constant z=%.9f", w.n_enumerated,
                            w.n_random, w.z_min_search(), w.analytic_z_f));
    }

    {
        SlidingModeConfig smc(0.01, 0.2);
        DriveDesign d = design_drive(PureState::one(), LyapunovConfig{}, icfg, smc);
        std::size_t seeds = a.quick ? 20 : 100;
        struct Case {
            Axis axis;
            double eps, band;
        };
        for (Case c : {Case{Axis::x, 0.02, 2e-4}, Case{Axis::y, 0.02, 2e-4}, Case{Axis::x, 0.2, 1e-4},
                       Case{Axis::y, 0.2, 1.3e-3}}) {
            NoiseToleranceResult r =
                replay_under_uniform_noise(d.trace, PureState::one(), c.axis, c.eps, seeds, g.seed);
            double dev = r.max_deviation(0.99);
            report.check(format("noise-tolerance-%s-%g", to_string(c.axis).c_str(), c.eps),
                         dev <= c.band,
                         format("%zu seeds, population in [%.6f, %.6f], band 0.99+-%g", seeds, r.min,
                                r.max, c.band));
        }
    }
    return report.finish();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sliding-mode control of two-level quantum systems"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Random seed")->each([&](const std::string &) { g.seed_given = true; });
    app.add_option("--out", g.out, "Output directory")->capture_default_str();
    app.add_option("--dt", g.dt, "Integration step")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string &) { g.dt_given = true; });

    PeriodArgs pa;
    auto *period = app.add_subcommand("design-period", "Select the measurement period");
    period->add_option("--p0", pa.p0, "Allowed failure probability in (0,1)")->required();
    period->add_option("--eps", pa.eps, "Uncertainty bound > 0")->required();
    period->add_option("--class", pa.cls, "Uncertainty class")
        ->required()
        ->check(CLI::IsMember({"xy", "x", "y"}));

    DriveArgs da;
    auto *drive = app.add_subcommand("design-drive", "Design a Lyapunov drive into the domain");
    drive->add_option("--initial", da.initial, "Initial state: 0, 1 or plus")
        ->check(CLI::IsMember({"0", "1", "plus"}))
        ->capture_default_str();
    drive->add_option("--K", da.gain, "sigma_y gain")->capture_default_str();
    drive->add_option("--terminal-p", da.terminal_p, "Stop at this failure probability");
    drive->add_option("--p0", da.p0, "Domain failure probability")->capture_default_str();
    drive->add_option("--max-time", da.max_time, "Give up after this time")->capture_default_str();
    drive->add_flag("--time-optimal", da.time_optimal, "Emit the two-segment bang-bang reference");
    drive->add_option("--umax", da.umax, "Amplitude of the time-optimal reference")
        ->capture_default_str();

    std::string config_path;
    auto *protocol = app.add_subcommand("run-protocol", "Monte-Carlo run of the measurement protocol");
    protocol->add_option("config", config_path, "key = value config file")->required();

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "Run the analysis checks");
    verify->add_flag("--quick", va.quick, "Reduced grids");
    verify->add_option("--eps", va.eps, "Spot-check uncertainty bound");
    verify->add_option("--p0", va.p0, "Spot-check failure probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*period) return cmd_design_period(pa);
        if (*drive) return cmd_design_drive(g, da);
        if (*protocol) return cmd_run_protocol(g, config_path);
        if (*verify) return cmd_verify(g, va);
    } catch (const DesignError &e) {
        std::fprintf(stderr, "design failed: %s\n", e.what());
        return kDesignFailed;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const std::domain_error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kDesignFailed;
    }
    return kUsage;
}
