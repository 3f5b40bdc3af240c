#include <cmath>
#include <random>

#include "doctest.h"
#include "su2opt/su2.hpp"

using namespace su2opt;

namespace {
const double kPi = 0.5 * kTwoPi;

SU2Operator random_su2(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GroupParams p;
    p.r = std::sqrt(u(rng));
    p.psi = kTwoPi * u(rng);
    p.phi = kTwoPi * u(rng);
    return params_to_matrix(p);
}
}  // namespace

TEST_SUITE("su2") {

TEST_CASE("params_to_matrix basics") {
    const SU2Operator id = params_to_matrix({1.0, 0.0, 0.0});
    CHECK(std::abs(id.a - std::complex<double>(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(id.b) < 1e-15);

    const SU2Operator anti = params_to_matrix({0.0, 0.0, kPi / 2.0});
    CHECK(std::abs(anti.a) < 1e-15);
    CHECK(std::abs(anti.b - std::complex<double>(0.0, 1.0)) < 1e-15);
}

TEST_CASE("round trip params <-> matrix") {
    const GroupParams p{0.6, 0.3, 1.1};
    const GroupParams q = matrix_to_params(params_to_matrix(p));
    CHECK(std::abs(q.r - p.r) < 1e-12);
    CHECK(std::abs(q.psi - p.psi) < 1e-12);
    CHECK(std::abs(q.phi - p.phi) < 1e-12);

    std::mt19937 rng(20240811);
    for (int i = 0; i < 500; ++i) {
        const SU2Operator m = random_su2(rng);
        CHECK(m.unitarity_defect() < 1e-12);
        const SU2Operator back = params_to_matrix(matrix_to_params(m));
        CHECK(distance(m, back) < 1e-12);
    }
}

TEST_CASE("gauge conventions at r = 0 and r = 1") {
    SU2Operator diag;
    diag.a = std::polar(1.0, 0.7);
    diag.b = 0.0;
    const GroupParams p = matrix_to_params(diag);
    CHECK(p.r == doctest::Approx(1.0));
    CHECK(p.psi == doctest::Approx(0.7));
    CHECK(p.phi == 0.0);

    SU2Operator anti;
    anti.a = 0.0;
    anti.b = std::polar(1.0, 2.2);
    const GroupParams q = matrix_to_params(anti);
    CHECK(q.r == 0.0);
    CHECK(q.psi == 0.0);
    CHECK(q.phi == doctest::Approx(2.2));
}

TEST_CASE("project") {
    CHECK(project(SU2Operator::identity()).x == doctest::Approx(1.0));
    CHECK(project(SU2Operator::identity()).y == doctest::Approx(0.0));

    const SU2Operator m = params_to_matrix({0.6, 0.3, 2.0});
    const DiskPoint p = project(m);
    CHECK(p.x == doctest::Approx(0.6 * std::cos(0.3)).epsilon(1e-14));
    CHECK(p.y == doctest::Approx(0.6 * std::sin(0.3)).epsilon(1e-14));

    // Independent of the off-diagonal phase.
    const DiskPoint q = project(params_to_matrix({0.6, 0.3, 5.0}));
    CHECK(disk_distance(p, q) == 0.0);
}

TEST_CASE("su2_exp special cases") {
    const SU2Operator id = su2_exp(0.0, 0.0, 0.0, 3.7);
    CHECK(distance(id, SU2Operator::identity()) < 1e-15);

    const double c = 1.3, t = 2.1;
    const SU2Operator z = su2_exp(0.0, 0.0, c, t);
    CHECK(std::abs(z.a - std::polar(1.0, -0.5 * c * t)) < 1e-14);
    CHECK(std::abs(z.b) < 1e-15);
}

TEST_CASE("su2_exp one-parameter group law") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double cx = u(rng), cy = u(rng), cz = u(rng);
        const double t1 = std::abs(u(rng)), t2 = std::abs(u(rng));
        const SU2Operator lhs = su2_exp(cx, cy, cz, t1) * su2_exp(cx, cy, cz, t2);
        const SU2Operator rhs = su2_exp(cx, cy, cz, t1 + t2);
        CHECK(distance(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("regime classification") {
    CHECK(classify_regime({1.0, 3.0, ControlMode::ThreeControls}) == Regime::ThreeStrong);
    CHECK(classify_regime({3.0, 1.0, ControlMode::ThreeControls}) == Regime::ThreeWeak);
    CHECK(classify_regime({1.0, 1.0, ControlMode::ThreeControls}) == Regime::ThreeEqual);
    CHECK(classify_regime({-1.0, 1.0, ControlMode::ThreeControls}) == Regime::ThreeEqual);
    CHECK(classify_regime({1.0, 1.0 + 1e-12, ControlMode::ThreeControls}) == Regime::ThreeEqual);

    CHECK(classify_regime({2.0, 1.0, ControlMode::TwoControls}) == Regime::TwoWeak);
    CHECK(classify_regime({1.2, 1.0, ControlMode::TwoControls}) == Regime::TwoMiddle);
    CHECK(classify_regime({1.0, 1.0, ControlMode::TwoControls}) == Regime::TwoStrong);
    CHECK(classify_regime({0.0, 1.0, ControlMode::TwoControls}) == Regime::TwoStrong);
    // Boundary omega0/sqrt(3) belongs to the weak case.
    CHECK(classify_regime({std::sqrt(3.0), 1.0, ControlMode::TwoControls}) == Regime::TwoWeak);

    CHECK_THROWS_AS(classify_regime({1.0, 0.0, ControlMode::TwoControls}), std::invalid_argument);
    CHECK_THROWS_AS(classify_regime({1.0, -2.0, ControlMode::TwoControls}), std::invalid_argument);
}

TEST_CASE("distances") {
    const SU2Operator id = SU2Operator::identity();
    CHECK(distance(id, id) == 0.0);
    SU2Operator neg;
    neg.a = -1.0;
    CHECK(distance(id, neg) == doctest::Approx(2.0 * std::sqrt(2.0)));
    CHECK(disk_distance({1.0, 0.0}, {-1.0, 0.0}) == doctest::Approx(2.0));
}

TEST_CASE("angle wrapping") {
    CHECK(wrap_two_pi(-0.1) == doctest::Approx(kTwoPi - 0.1));
    CHECK(wrap_two_pi(kTwoPi) == 0.0);
    CHECK(wrap_two_pi(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_pm_pi(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_pm_pi(-kPi) == doctest::Approx(kPi));
}

}  // TEST_SUITE
