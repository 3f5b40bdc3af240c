// su2opt: minimum-time control of a driven qubit with bounded controls.
//
// Subcommands: solve, diameter, frontline, trajectory, verify, sweep.
// Exit codes: 0 success/verified, 1 usage error, 2 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "su2opt/oracle.hpp"
#include "su2opt/solver.hpp"

using namespace su2opt;
using nlohmann::json;

namespace {

constexpr double kPi = 0.5 * kTwoPi;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct CommonOpts {
    double gamma{1.0};
    double omega0{0.0};
    std::string mode{"three"};
    std::string format{"csv"};
    std::string out;

    ModelParams params() const {
        ModelParams mp;
        mp.gamma = gamma;
        mp.omega0 = omega0;
        if (mode == "three") {
            mp.mode = ControlMode::ThreeControls;
        } else if (mode == "two") {
            mp.mode = ControlMode::TwoControls;
        } else {
            throw CLI::ValidationError("--mode", "expected 'two' or 'three'");
        }
        validate(mp);
        return mp;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--gamma", opts.gamma, "Control bound (rad per unit time), > 0")->required();
    cmd->add_option("--omega0", opts.omega0, "Drift strength (rad per unit time)")->required();
    cmd->add_option("--mode", opts.mode, "Control channels: two | three")->required();
    cmd->add_option("--format", opts.format, "Output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out, "Output path (default: stdout)");
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opts.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + opts.out);
    f << text;
}

struct TargetSpec {
    enum class Kind { Point, Diagonal, Swap } kind{Kind::Point};
    DiskPoint point;
    double lambda{0.0};
};

TargetSpec parse_target(const std::string& spec) {
    TargetSpec t;
    if (spec == "swap") {
        t.kind = TargetSpec::Kind::Swap;
        t.point = {0.0, 0.0};
        return t;
    }
    auto parse_pair = [](const std::string& s, double& a, double& b) {
        std::istringstream in(s);
        char comma = 0;
        in >> a >> comma >> b;
        if (!in || comma != ',') return false;
        in >> std::ws;
        return in.eof();
    };
    if (spec.rfind("diag:", 0) == 0) {
        std::istringstream in(spec.substr(5));
        in >> t.lambda;
        if (!in) throw CLI::ValidationError("--target", "expected diag:LAMBDA");
        t.kind = TargetSpec::Kind::Diagonal;
        t.lambda = wrap_two_pi(t.lambda);
        t.point = {std::cos(t.lambda), std::sin(t.lambda)};
        return t;
    }
    if (spec.rfind("polar:", 0) == 0) {
        double r = 0.0, psi = 0.0;
        if (!parse_pair(spec.substr(6), r, psi) || r < 0.0 || r > 1.0 + 1e-12) {
            throw CLI::ValidationError("--target", "expected polar:R,PSI with R in [0, 1]");
        }
        t.point = {r * std::cos(psi), r * std::sin(psi)};
        return t;
    }
    double x = 0.0, y = 0.0;
    if (!parse_pair(spec, x, y)) {
        throw CLI::ValidationError(
            "--target", "expected 'X,Y', 'polar:R,PSI', 'diag:LAMBDA' or 'swap'");
    }
    t.point = {x, y};
    return t;
}

OracleConfig verification_config(const ModelParams& mp) {
    OracleConfig cfg = OracleConfig::defaults(mp);
    cfg.hit_tolerance = 5e-4;
    cfg.param_grid_size = 8001;
    return cfg;
}

int run_solve(const CommonOpts& opts, const std::string& target_spec) {
    const ModelParams mp = opts.params();
    const TargetSpec target = parse_target(target_spec);

    Solution sol;
    switch (target.kind) {
        case TargetSpec::Kind::Swap:
            sol = swap_min_time(mp);
            break;
        case TargetSpec::Kind::Diagonal:
            sol = diagonal_min_time(target.lambda, mp);
            break;
        case TargetSpec::Kind::Point:
            sol = (mp.mode == ControlMode::ThreeControls) ? min_time_three(target.point, mp)
                                                          : min_time_two(target.point, mp);
            break;
    }
    const VerifyReport rep = verify_solution(sol, target.point, mp, verification_config(mp));

    if (opts.format == "json") {
        json j;
        j["inputs"] = {{"gamma", mp.gamma},
                       {"omega0", mp.omega0},
                       {"mode", opts.mode},
                       {"target", {target.point.x, target.point.y}}};
        j["regime"] = regime_name(sol.regime);
        j["result"] = {{"t_f", sol.t_f},
                       {"param", sol.param},
                       {"phi", sol.phi},
                       {"residual", sol.residual}};
        j["verification"] = {{"passed", rep.passed},
                             {"closed_form_residual", rep.closed_form_residual},
                             {"replay_residual", rep.replay_residual}};
        if (rep.premature_hit_time) {
            j["verification"]["premature_hit_time"] = *rep.premature_hit_time;
        }
        if (!rep.passed) j["verification"]["failed_check"] = rep.failed_check;
        emit(opts, j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "gamma,omega0,mode,regime,target_x,target_y,t_f,param,phi,residual,verified\n";
        csv << fmt9(mp.gamma) << ',' << fmt9(mp.omega0) << ',' << opts.mode << ','
            << regime_name(sol.regime) << ',' << fmt9(target.point.x) << ','
            << fmt9(target.point.y) << ',' << fmt9(sol.t_f) << ',' << fmt9(sol.param) << ','
            << fmt9(sol.phi) << ',' << fmt9(sol.residual) << ',' << (rep.passed ? 1 : 0)
            << '\n';
        emit(opts, csv.str());
    }
    if (!rep.passed) {
        std::cerr << "verification failed: " << rep.failed_check << "\n";
        return 2;
    }
    return 0;
}

int run_diameter(const CommonOpts& opts) {
    const ModelParams mp = opts.params();
    const Diameter d = diameter(mp);
    if (opts.format == "json") {
        json j;
        j["inputs"] = {{"gamma", mp.gamma}, {"omega0", mp.omega0}, {"mode", opts.mode}};
        j["regime"] = regime_name(d.regime);
        j["result"] = {{"t_max", d.t_max},
                       {"worst_point", {d.worst_point.x, d.worst_point.y}},
                       {"worst_param", d.worst_param},
                       {"open_limit", d.open_limit}};
        emit(opts, j.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "gamma,omega0,mode,regime,t_max,worst_x,worst_y,worst_param,open_limit\n";
        csv << fmt9(mp.gamma) << ',' << fmt9(mp.omega0) << ',' << opts.mode << ','
            << regime_name(d.regime) << ',' << fmt9(d.t_max) << ',' << fmt9(d.worst_point.x)
            << ',' << fmt9(d.worst_point.y) << ',' << fmt9(d.worst_param) << ','
            << (d.open_limit ? 1 : 0) << '\n';
        emit(opts, csv.str());
    }
    return 0;
}

int run_frontline(const CommonOpts& opts, double t, int n) {
    const ModelParams mp = opts.params();
    const FrontLine fl = (mp.mode == ControlMode::ThreeControls)
                             ? frontline_sample_three(mp, t, n, /*full_range=*/true)
                             : frontline_sample_two(mp, t, n, /*full_range=*/true);
    std::ostringstream csv;
    csv << "param,x,y,admissible\n";
    for (const FrontLineSample& s : fl.samples) {
        csv << fmt9(s.param) << ',' << fmt9(s.point.x) << ',' << fmt9(s.point.y) << ','
            << (s.admissible ? 1 : 0) << '\n';
    }
    emit(opts, csv.str());
    return 0;
}

int run_trajectory(const CommonOpts& opts, double param, double phi, double t_max, int n) {
    const ModelParams mp = opts.params();
    std::ostringstream csv;
    csv << "t,x,y,ux,uy,uz\n";
    for (int i = 0; i < n; ++i) {
        const double t = t_max * i / (n - 1);
        DiskPoint p;
        ControlSample u;
        if (mp.mode == ControlMode::ThreeControls) {
            p = disk_three(param, mp, t);
            u = controls_three({param, phi}, mp, t);
        } else {
            p = disk_two(param, mp, t);
            u = controls_two({param, phi}, mp, t);
        }
        csv << fmt9(t) << ',' << fmt9(p.x) << ',' << fmt9(p.y) << ',' << fmt9(u.ux) << ','
            << fmt9(u.uy) << ',' << fmt9(u.uz) << '\n';
    }
    emit(opts, csv.str());
    return 0;
}

std::vector<double> parse_range(const std::string& spec, double fallback) {
    if (spec.empty()) return {fallback};
    double lo = 0.0, hi = 0.0;
    int n = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1) {
        throw CLI::ValidationError("--*-range", "expected LO:HI:COUNT");
    }
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    }
    return out;
}

int run_sweep(const CommonOpts& opts, const std::string& gamma_range,
              const std::string& omega0_range, const std::string& quantity) {
    std::ostringstream csv;
    if (quantity == "wc") {
        csv << "gamma,omega0,mode,regime,t_max,worst_x,worst_y,worst_param,open_limit\n";
    } else {
        csv << "gamma,omega0,mode,regime,value\n";
    }
    for (double g : parse_range(gamma_range, opts.gamma)) {
        for (double w : parse_range(omega0_range, opts.omega0)) {
            CommonOpts point = opts;
            point.gamma = g;
            point.omega0 = w;
            const ModelParams mp = point.params();
            csv << fmt9(g) << ',' << fmt9(w) << ',' << opts.mode << ','
                << regime_name(classify_regime(mp));
            if (quantity == "diameter") {
                csv << ',' << fmt9(diameter(mp).t_max);
            } else if (quantity == "tc") {
                double tc = 0.0;
                if (mp.mode == ControlMode::ThreeControls) {
                    tc = kPi / mp.gamma;
                } else {
                    tc = (std::abs(w) <= 1e-12 * g) ? 0.0 : critical_time_two(mp);
                }
                csv << ',' << fmt9(tc);
            } else if (quantity == "wc") {
                const Diameter d = diameter(mp);
                csv << ',' << fmt9(d.t_max) << ',' << fmt9(d.worst_point.x) << ','
                    << fmt9(d.worst_point.y) << ',' << fmt9(d.worst_param) << ','
                    << (d.open_limit ? 1 : 0);
            } else {
                throw CLI::ValidationError("--quantity", "expected diameter | tc | wc");
            }
            csv << '\n';
        }
    }
    emit(opts, csv.str());
    return 0;
}

// Lightweight self-checks; the full acceptance suite lives in the tests.
int run_verify(const CommonOpts& opts, const std::string& suite) {
    int failures = 0;
    auto report = [&failures](bool ok, const std::string& what) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };

    const bool all = suite == "all";
    if (suite == "table1" || all) {
        struct Case {
            double gamma, omega0;
            ControlMode mode;
            double want;
        };
        const Case cases[] = {
            {3.0, 1.0, ControlMode::ThreeControls, kTwoPi / 3.0},
            {1.0, 1.0, ControlMode::ThreeControls, kTwoPi},
            {1.0, 3.0, ControlMode::ThreeControls, 2.0 * kTwoPi / 3.0},
            {3.0, 1.0, ControlMode::TwoControls, kTwoPi / 3.0},
            {1.0, 1.2, ControlMode::TwoControls, 4.8 * kPi / 2.44},
            {1.0, 2.0, ControlMode::TwoControls, (kPi / 2.0) * (1.0 + std::sqrt(5.0))},
        };
        for (const Case& c : cases) {
            const ModelParams mp{c.omega0, c.gamma, c.mode};
            const double got = diameter(mp).t_max;
            std::ostringstream what;
            what << "diameter(gamma=" << c.gamma << ", omega0=" << c.omega0 << ", "
                 << (c.mode == ControlMode::ThreeControls ? "three" : "two")
                 << ") = " << fmt9(got);
            report(std::abs(got - c.want) <= 1e-12, what.str());
        }
    }
    if (suite == "examples" || all) {
        for (double gamma : {0.5, 1.0, 2.0}) {
            for (ControlMode mode : {ControlMode::ThreeControls, ControlMode::TwoControls}) {
                const ModelParams mp{0.8, gamma, mode};
                const Solution s = (mode == ControlMode::ThreeControls)
                                       ? min_time_three({0.0, 0.0}, mp)
                                       : min_time_two({0.0, 0.0}, mp);
                std::ostringstream what;
                what << "swap time (gamma=" << gamma << ", "
                     << (mode == ControlMode::ThreeControls ? "three" : "two")
                     << ") = " << fmt9(s.t_f);
                report(std::abs(s.t_f - kPi / gamma) <= 1e-9 &&
                           verify_solution(s, {0.0, 0.0}, mp, verification_config(mp)).passed,
                       what.str());
            }
        }
        const ModelParams nodrift{0.0, 1.0, ControlMode::TwoControls};
        const Solution diag = diagonal_min_time(kPi / 2.0, nodrift);
        report(std::abs(diag.t_f - kPi * std::sqrt(3.0)) <= 1e-9,
               "diagonal lambda=pi/2, no drift: t_f = " + fmt9(diag.t_f));
        const ModelParams strong{1.0, 3.0, ControlMode::ThreeControls};
        const Solution worst = min_time_three({-0.5, 0.8660254037844386}, strong);
        report(std::abs(worst.t_f - kTwoPi / 3.0) <= 1e-6,
               "strong-regime worst case: t_f = " + fmt9(worst.t_f));
    }
    if (suite == "pmp" || all) {
        std::mt19937 rng(4242);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> grid;
        for (int i = 0; i <= 48; ++i) grid.push_back(6.0 * i / 48.0);
        double worst3 = 0.0, worst2 = 0.0;
        for (int i = 0; i < 60; ++i) {
            const ModelParams mp3{2.0 * u(rng) - 1.0, 0.4 + 2.0 * u(rng),
                                  ControlMode::ThreeControls};
            worst3 = std::max(
                worst3, verify_pmp(ThreeControlExtremal{0.999 * (2.0 * u(rng) - 1.0),
                                                        kTwoPi * u(rng)},
                                   mp3, grid));
            const ModelParams mp2{2.0 * u(rng) - 1.0, 0.4 + 2.0 * u(rng),
                                  ControlMode::TwoControls};
            worst2 = std::max(worst2,
                              verify_pmp(TwoControlExtremal{6.0 * u(rng) - 3.0, kTwoPi * u(rng)},
                                         mp2, grid));
        }
        report(worst3 <= 1e-9, "three-control stationarity residual = " + fmt9(worst3));
        report(worst2 <= 1e-9, "two-control stationarity residual = " + fmt9(worst2));
    }
    if (failures > 0) {
        std::cout << failures << " check(s) failed\n";
        return 2;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-time evolutions on SU(2) for a driven qubit with bounded controls"};
    app.require_subcommand(1);

    CommonOpts solve_opts, diam_opts, front_opts, traj_opts, verify_opts, sweep_opts;
    std::string target_spec, suite{"all"}, gamma_range, omega0_range, quantity{"diameter"};
    double t = 1.0, phi = 0.0, param = 0.0, t_max = 1.0;
    int n = 101;

    CLI::App* solve = app.add_subcommand("solve", "Minimum time to a target operator");
    add_common(solve, solve_opts);
    solve->add_option("--target", target_spec, "'X,Y' | 'polar:R,PSI' | 'diag:LAMBDA' | 'swap'")
        ->required();

    CLI::App* diam = app.add_subcommand("diameter", "Worst-case operator and time");
    add_common(diam, diam_opts);

    CLI::App* front = app.add_subcommand("frontline", "Sample the optimal front line at time t");
    add_common(front, front_opts);
    front->add_option("--time", t, "Evolution time")->required();
    front->add_option("--n", n, "Number of samples");

    CLI::App* traj = app.add_subcommand("trajectory", "Sample one extremal trajectory");
    add_common(traj, traj_opts);
    traj->add_option("--param", param, "Extremal parameter (alpha or omega)")->required();
    traj->add_option("--phi", phi, "Transverse phase");
    traj->add_option("--time", t_max, "Final time")->required();
    traj->add_option("--n", n, "Number of samples");

    CLI::App* verify = app.add_subcommand("verify", "Run built-in consistency checks");
    add_common(verify, verify_opts);
    verify->add_option("--suite", suite, "table1 | examples | pmp | all")
        ->check(CLI::IsMember({"table1", "examples", "pmp", "all"}));

    CLI::App* sweep = app.add_subcommand("sweep", "Tabulate a quantity over parameter ranges");
    add_common(sweep, sweep_opts);
    sweep->add_option("--gamma-range", gamma_range, "LO:HI:COUNT (overrides --gamma)");
    sweep->add_option("--omega0-range", omega0_range, "LO:HI:COUNT (overrides --omega0)");
    sweep->add_option("--quantity", quantity, "diameter | tc | wc");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(solve_opts, target_spec);
        if (diam->parsed()) return run_diameter(diam_opts);
        if (front->parsed()) return run_frontline(front_opts, t, n);
        if (traj->parsed()) return run_trajectory(traj_opts, param, phi, t_max, n);
        if (verify->parsed()) return run_verify(verify_opts, suite);
        if (sweep->parsed()) return run_sweep(sweep_opts, gamma_range, omega0_range, quantity);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
