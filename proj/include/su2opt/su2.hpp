#pragma once

#include <complex>

namespace su2opt {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Wrap an angle into [0, 2*pi).
double wrap_two_pi(double angle);

/// Wrap an angle into (-pi, pi].
double wrap_pm_pi(double angle);

/// Special unitary 2x2 matrix stored as its first row:
/// [[a, b], [-conj(b), conj(a)]] with |a|^2 + |b|^2 = 1.
struct SU2Operator {
    std::complex<double> a{1.0, 0.0};
    std::complex<double> b{0.0, 0.0};

    static SU2Operator identity() { return {}; }

    /// |  |a|^2 + |b|^2 - 1  |, zero for a valid element.
    double unitarity_defect() const {
        return std::abs(std::norm(a) + std::norm(b) - 1.0);
    }
};

SU2Operator operator*(const SU2Operator& lhs, const SU2Operator& rhs);

/// (r, psi, phi) coordinates: a = r e^{i psi}, b = sqrt(1-r^2) e^{i phi}.
struct GroupParams {
    double r{1.0};
    double psi{0.0};
    double phi{0.0};
};

/// Point of the closed unit disk; x + i y is the upper-left matrix entry.
/// Operators differing only by the off-diagonal phase map to the same point.
struct DiskPoint {
    double x{1.0};
    double y{0.0};
};

enum class ControlMode { ThreeControls, TwoControls };

/// Drift strength, control bound and number of control channels.
struct ModelParams {
    double omega0{0.0};
    double gamma{1.0};
    ControlMode mode{ControlMode::ThreeControls};
};

enum class Regime {
    ThreeStrong,  // gamma > |omega0|
    ThreeEqual,   // gamma = |omega0|
    ThreeWeak,    // gamma < |omega0|
    TwoStrong,    // gamma >= |omega0|
    TwoMiddle,    // |omega0|/sqrt(3) < gamma < |omega0|
    TwoWeak,      // gamma <= |omega0|/sqrt(3)
};

const char* regime_name(Regime r);

/// Throws std::invalid_argument unless gamma > 0 and finite.
void validate(const ModelParams& mp);

SU2Operator params_to_matrix(const GroupParams& p);

/// Inverse of params_to_matrix up to angle wrapping. Gauge convention:
/// psi = 0 when r = 0 and phi = 0 when r = 1.
GroupParams matrix_to_params(const SU2Operator& m);

DiskPoint project(const SU2Operator& m);

/// exp(-i (cx Sx + cy Sy + cz Sz) t) with S_k = sigma_k / 2, via the
/// half-angle closed form; the zero generator yields the identity.
SU2Operator su2_exp(double cx, double cy, double cz, double t);

/// Boundaries resolved with tolerance 1e-9 * max(gamma, |omega0|).
Regime classify_regime(const ModelParams& mp);

/// Frobenius norm of the difference.
double distance(const SU2Operator& m1, const SU2Operator& m2);

double disk_distance(const DiskPoint& p1, const DiskPoint& p2);

}  // namespace su2opt
