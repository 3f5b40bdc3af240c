#include <cmath>
#include <random>

#include "doctest.h"
#include "su2opt/oracle.hpp"

using namespace su2opt;

namespace {
const double kPi = 0.5 * kTwoPi;
}

TEST_SUITE("oracle") {

TEST_CASE("identity target is hit at t = 0") {
    const ModelParams mp{1.0, 3.0, ControlMode::ThreeControls};
    const BruteResult r = brute_min_time({1.0, 0.0}, mp, OracleConfig::defaults(mp));
    CHECK(r.t_hat == 0.0);
}

TEST_CASE("strong-regime collapse point") {
    // The collapsing front grazes this boundary target: the chord passes
    // within hit_tolerance once 2*sin(s)*sin(2s) ~ 4s^2 <= tol, i.e.
    // ~2*sqrt(tol/4) = 0.045 before the collapse time.
    const ModelParams mp{1.0, 3.0, ControlMode::ThreeControls};
    const BruteResult r =
        brute_min_time({-0.5, 0.8660254037844386}, mp, OracleConfig::defaults(mp));
    CHECK(r.t_hat < kTwoPi / 3.0 - 0.042);
    CHECK(r.t_hat > kTwoPi / 3.0 - 0.048);
}

TEST_CASE("two-control swap target") {
    const ModelParams mp{2.0, 1.0, ControlMode::TwoControls};
    const BruteResult r = brute_min_time({0.0, 0.0}, mp, OracleConfig::defaults(mp));
    CHECK(std::abs(r.t_hat - kPi) < 5e-3);
    CHECK(std::abs(r.param_hat - 2.0) < 1e-2);
}

TEST_CASE("oracle brackets solver times on random targets") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const ModelParams mp3{1.0, 3.0, ControlMode::ThreeControls};
    const ModelParams mp2{2.0, 1.0, ControlMode::TwoControls};
    const OracleConfig cfg3 = OracleConfig::defaults(mp3);
    const OracleConfig cfg2 = OracleConfig::defaults(mp2);
    std::vector<DiskPoint> targets;
    for (int i = 0; i < 12; ++i) {
        const double r = std::sqrt(u(rng)) * 0.98;
        const double th = kTwoPi * u(rng);
        targets.push_back({r * std::cos(th), r * std::sin(th)});
    }
    const auto hits3 = brute_min_time_batch(targets, mp3, cfg3);
    const auto hits2 = brute_min_time_batch(targets, mp2, cfg2);
    for (size_t i = 0; i < targets.size(); ++i) {
        const double t3 = min_time_three(targets[i], mp3).t_f;
        CHECK(hits3[i].t_hat <= t3 + cfg3.time_step + 5e-3);
        CHECK(hits3[i].t_hat >= t3 - cfg3.time_step - 5e-2);
        const double t2 = min_time_two(targets[i], mp2).t_f;
        CHECK(hits2[i].t_hat <= t2 + cfg2.time_step + 5e-3);
        CHECK(hits2[i].t_hat >= t2 - cfg2.time_step - 5e-2);
    }
}

TEST_CASE("brute diameter, strong regimes") {
    // Boundary worst points are approached tangentially, so the default
    // hit tolerance shaves ~sqrt(tol) off the reported diameter.
    const ModelParams mp3{1.0, 3.0, ControlMode::ThreeControls};
    const double d3 = brute_diameter(mp3, OracleConfig::defaults(mp3));
    CHECK(d3 < kTwoPi / 3.0 + 1e-9);
    CHECK(d3 > kTwoPi / 3.0 - 0.06);
    const ModelParams mp2{1.0, 3.0, ControlMode::TwoControls};
    const double d2 = brute_diameter(mp2, OracleConfig::defaults(mp2));
    CHECK(d2 < kTwoPi / 3.0 + 1e-9);
    CHECK(d2 > kTwoPi / 3.0 - 0.06);
}

TEST_CASE("unreachable target trips the consistency error") {
    const ModelParams mp{1.0, 3.0, ControlMode::ThreeControls};
    CHECK_THROWS_AS(brute_min_time({1.4, 1.4}, mp, OracleConfig::defaults(mp)),
                    std::runtime_error);
}

TEST_CASE("verify_solution accepts a correct swap solution") {
    for (ControlMode mode : {ControlMode::ThreeControls, ControlMode::TwoControls}) {
        const ModelParams mp{1.0, 1.0, mode};
        const VerifyReport rep = verify_solution(swap_min_time(mp), {0.0, 0.0}, mp);
        CHECK(rep.passed);
        CHECK(rep.closed_form_residual < 1e-9);
        CHECK(rep.replay_residual < 1e-6);
        CHECK(!rep.premature_hit_time.has_value());
    }
}

TEST_CASE("verify_solution flags a perturbed time") {
    const ModelParams mp{1.0, 1.0, ControlMode::ThreeControls};
    Solution s = swap_min_time(mp);
    s.t_f *= 1.05;
    const VerifyReport rep = verify_solution(s, {0.0, 0.0}, mp);
    CHECK(!rep.passed);
    CHECK(rep.failed_check == "closed_form");
}

TEST_CASE("verify_solution flags a wrong parameter sign") {
    const ModelParams mp{2.0, 1.0, ControlMode::ThreeControls};
    Solution s = min_time_three({0.4, 0.3}, mp);
    REQUIRE(std::abs(s.param) > 1e-3);
    s.param = -s.param;
    const VerifyReport rep = verify_solution(s, {0.4, 0.3}, mp);
    CHECK(!rep.passed);
    CHECK(rep.failed_check == "closed_form");
}

TEST_CASE("grid refinement tightens the oracle") {
    const ModelParams mp{1.0, 3.0, ControlMode::ThreeControls};
    const OracleConfig coarse = OracleConfig::defaults(mp);
    OracleConfig fine = coarse;
    fine.time_step *= 0.5;
    fine.param_grid_size = 2 * coarse.param_grid_size - 1;

    std::mt19937 rng(55);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<DiskPoint> targets;
    for (int i = 0; i < 8; ++i) {
        const double r = std::sqrt(u(rng)) * 0.95;
        const double th = kTwoPi * u(rng);
        targets.push_back({r * std::cos(th), r * std::sin(th)});
    }
    OracleConfig ref = fine;
    ref.time_step = coarse.time_step / 8.0;

    const auto hc = brute_min_time_batch(targets, mp, coarse);
    const auto hf = brute_min_time_batch(targets, mp, fine);
    const auto hr = brute_min_time_batch(targets, mp, ref);
    for (size_t i = 0; i < targets.size(); ++i) {
        // Refined grids sample a superset of (time, parameter) pairs, so
        // the first-hit time decreases monotonically toward the continuum
        // ball-entry time.
        CHECK(hf[i].t_hat <= hc[i].t_hat + 1e-12);
        CHECK(hr[i].t_hat <= hf[i].t_hat + 1e-12);
        CHECK(std::abs(hf[i].t_hat - hr[i].t_hat) <=
              std::abs(hc[i].t_hat - hr[i].t_hat) + 1e-12);
    }
}

TEST_CASE("config validation") {
    const ModelParams mp{1.0, 1.0, ControlMode::ThreeControls};
    OracleConfig cfg = OracleConfig::defaults(mp);
    cfg.time_step = 0.0;
    CHECK_THROWS_AS(brute_march({{0.0, 0.0}}, mp, cfg, 1.0), std::invalid_argument);
}

}  // TEST_SUITE
