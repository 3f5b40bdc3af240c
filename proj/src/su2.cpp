#include "su2opt/su2.hpp"

#include <cmath>
#include <stdexcept>

namespace su2opt {

double wrap_two_pi(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double wrap_pm_pi(double angle) {
    double w = std::remainder(angle, kTwoPi);
    if (w <= -0.5 * kTwoPi) w += kTwoPi;
    return w;
}

SU2Operator operator*(const SU2Operator& lhs, const SU2Operator& rhs) {
    SU2Operator out;
    out.a = lhs.a * rhs.a - lhs.b * std::conj(rhs.b);
    out.b = lhs.a * rhs.b + lhs.b * std::conj(rhs.a);
    return out;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::ThreeStrong: return "three_strong";
        case Regime::ThreeEqual: return "three_equal";
        case Regime::ThreeWeak: return "three_weak";
        case Regime::TwoStrong: return "two_strong";
        case Regime::TwoMiddle: return "two_middle";
        case Regime::TwoWeak: return "two_weak";
    }
    return "unknown";
}

void validate(const ModelParams& mp) {
    if (!(mp.gamma > 0.0) || !std::isfinite(mp.gamma) || !std::isfinite(mp.omega0)) {
        throw std::invalid_argument("ModelParams: gamma must be positive and finite");
    }
}

SU2Operator params_to_matrix(const GroupParams& p) {
    SU2Operator m;
    const double s = std::sqrt(std::max(0.0, 1.0 - p.r * p.r));
    m.a = std::polar(p.r, p.psi);
    m.b = std::polar(s, p.phi);
    return m;
}

GroupParams matrix_to_params(const SU2Operator& m) {
    GroupParams p;
    p.r = std::min(1.0, std::abs(m.a));
    p.psi = (std::abs(m.a) > 0.0) ? wrap_two_pi(std::arg(m.a)) : 0.0;
    p.phi = (std::abs(m.b) > 0.0) ? wrap_two_pi(std::arg(m.b)) : 0.0;
    return p;
}

DiskPoint project(const SU2Operator& m) {
    return {m.a.real(), m.a.imag()};
}

SU2Operator su2_exp(double cx, double cy, double cz, double t) {
    const double nu = std::sqrt(cx * cx + cy * cy + cz * cz);
    const double half = 0.5 * nu * t;
    // sin(half)/nu, stable as nu -> 0.
    const double sinc = (std::abs(half) < 1e-8)
                            ? 0.5 * t * (1.0 - half * half / 6.0)
                            : std::sin(half) / nu;
    SU2Operator m;
    m.a = {std::cos(half), -cz * sinc};
    m.b = {-cy * sinc, -cx * sinc};
    return m;
}

Regime classify_regime(const ModelParams& mp) {
    validate(mp);
    const double w = std::abs(mp.omega0);
    const double tol = 1e-9 * std::max(mp.gamma, w);
    if (mp.mode == ControlMode::ThreeControls) {
        if (std::abs(mp.gamma - w) <= tol) return Regime::ThreeEqual;
        return (mp.gamma > w) ? Regime::ThreeStrong : Regime::ThreeWeak;
    }
    if (mp.gamma >= w - tol) return Regime::TwoStrong;
    if (mp.gamma <= w / std::sqrt(3.0) + tol) return Regime::TwoWeak;
    return Regime::TwoMiddle;
}

double distance(const SU2Operator& m1, const SU2Operator& m2) {
    const double da = std::norm(m1.a - m2.a);
    const double db = std::norm(m1.b - m2.b);
    return std::sqrt(2.0 * (da + db));
}

double disk_distance(const DiskPoint& p1, const DiskPoint& p2) {
    return std::hypot(p1.x - p2.x, p1.y - p2.y);
}

}  // namespace su2opt
