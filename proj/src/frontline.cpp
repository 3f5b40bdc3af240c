#include "su2opt/frontline.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "su2opt/detail/rootfind.hpp"

namespace su2opt {

namespace {

constexpr double kPi = 0.5 * kTwoPi;

bool is_three(const ModelParams& mp) { return mp.mode == ControlMode::ThreeControls; }

double beta_of_omega(const ModelParams& mp, double omega) {
    const double b = mp.omega0 - omega;
    if (std::isinf(omega)) return omega > 0.0 ? -1.0 : 1.0;
    return b / std::hypot(b, mp.gamma);
}

double omega_of_beta(const ModelParams& mp, double beta) {
    const double a = mp.gamma / std::sqrt(std::max(1e-300, 1.0 - beta * beta));
    return mp.omega0 - beta * a;
}

}  // namespace

DiskPoint CriticalCurve::at(double t) const {
    return (mode == ControlMode::ThreeControls) ? disk_three(param_c, mp, t)
                                                : disk_two(param_c, mp, t);
}

double frontline_residual_three(const DiskPoint& p, const ModelParams& mp, double t) {
    const double tau = 0.5 * t;
    return p.y * std::sin(mp.omega0 * tau) - p.x * std::cos(mp.omega0 * tau) +
           std::cos(mp.gamma * tau);
}

double tangent_residual_two(const DiskPoint& p, double omega, const ModelParams& mp, double t) {
    const double tau = 0.5 * t;
    const double a = TwoControlExtremal{omega, 0.0}.rabi_rate(mp);
    return p.y * std::sin(omega * tau) - p.x * std::cos(omega * tau) + std::cos(a * tau);
}

CriticalCurve critical_curve_three(const ModelParams& mp) {
    if (classify_regime(mp) != Regime::ThreeWeak) {
        throw std::domain_error("critical_curve_three: requires gamma < |omega0|");
    }
    return {ControlMode::ThreeControls, mp, -mp.gamma / mp.omega0, kPi / mp.gamma};
}

CuspPoint cusp_three(const ModelParams& mp) {
    if (classify_regime(mp) != Regime::ThreeWeak) {
        throw std::domain_error("cusp_three: requires gamma < |omega0|");
    }
    const double k = mp.gamma / mp.omega0;
    const double half = kPi * mp.omega0 / (2.0 * mp.gamma);
    return {kPi / mp.gamma, {k * std::sin(half), k * std::cos(half)}};
}

double return_time_three(const ModelParams& mp) {
    validate(mp);
    return 2.0 * kTwoPi / (mp.gamma + std::abs(mp.omega0));
}

double critical_frequency_two(const ModelParams& mp) {
    validate(mp);
    if (std::abs(mp.omega0) <= 1e-12 * mp.gamma) {
        throw std::domain_error(
            "critical_frequency_two: omega0 = 0, critical trajectory degenerates to the initial point");
    }
    return (mp.omega0 * mp.omega0 + mp.gamma * mp.gamma) / mp.omega0;
}

double critical_time_two(const ModelParams& mp) {
    const double wc = critical_frequency_two(mp);
    (void)wc;
    const double w = std::abs(mp.omega0);
    return kPi * w / (mp.gamma * std::hypot(mp.omega0, mp.gamma));
}

CriticalCurve critical_curve_two(const ModelParams& mp) {
    return {ControlMode::TwoControls, mp, critical_frequency_two(mp), critical_time_two(mp)};
}

std::pair<double, double> boundary_critical_freqs_two(const ModelParams& mp, double t, int k) {
    validate(mp);
    if (k < 1) throw std::invalid_argument("boundary_critical_freqs_two: k must be >= 1");
    const double tau = 0.5 * t;
    if (mp.gamma * tau > k * kPi + 1e-12) {
        throw std::domain_error("boundary_critical_freqs_two: tau > k*pi/gamma");
    }
    const double kp = k * kPi;
    const double root = (tau > 0.0)
                            ? std::sqrt(std::max(0.0, (kp / tau) * (kp / tau) - mp.gamma * mp.gamma))
                            : std::numeric_limits<double>::infinity();
    return {mp.omega0 + root, mp.omega0 - root};
}

std::pair<double, double> boundary_cut_angles_two(const ModelParams& mp, double t, int k) {
    validate(mp);
    if (k < 1) throw std::invalid_argument("boundary_cut_angles_two: k must be >= 1");
    const double tau = 0.5 * t;
    const double kp = k * kPi;
    if (mp.gamma * tau > kp + 1e-12) {
        throw std::domain_error("boundary_cut_angles_two: tau > k*pi/gamma");
    }
    const double root = std::sqrt(std::max(0.0, kp * kp - mp.gamma * tau * mp.gamma * tau));
    return {-mp.omega0 * tau - root + kp, -mp.omega0 * tau + root - kp};
}

double BoundaryCutLocus::max_time() const { return 2.0 * k * kPi / mp.gamma; }

double tmax_three_strong(double gamma) { return kTwoPi / gamma; }

double tmax_three_weak(double gamma, double omega0) {
    return (kPi / gamma) * (1.0 + gamma / std::abs(omega0));
}

double tmax_two_strong(double gamma) { return kTwoPi / gamma; }

double tmax_two_middle(double gamma, double omega0) {
    return 2.0 * kTwoPi * std::abs(omega0) / (omega0 * omega0 + gamma * gamma);
}

double tmax_two_weak(double gamma, double omega0) {
    return (kPi / std::abs(omega0)) * (1.0 + std::hypot(omega0, gamma) / gamma);
}

double worst_case_time(const ModelParams& mp) {
    switch (classify_regime(mp)) {
        case Regime::ThreeStrong:
        case Regime::ThreeEqual:
            return tmax_three_strong(mp.gamma);
        case Regime::ThreeWeak:
            return tmax_three_weak(mp.gamma, mp.omega0);
        case Regime::TwoStrong:
            return tmax_two_strong(mp.gamma);
        case Regime::TwoMiddle:
            return tmax_two_middle(mp.gamma, mp.omega0);
        case Regime::TwoWeak:
            return tmax_two_weak(mp.gamma, mp.omega0);
    }
    return 0.0;
}

namespace {

// Extremal parameter of a point on the (straight) three-control front line.
double alpha_of_point(const DiskPoint& p, const ModelParams& mp, double t) {
    const double tau = 0.5 * t;
    const std::complex<double> lo = std::polar(1.0, (mp.gamma - mp.omega0) * tau);
    const std::complex<double> hi = std::polar(1.0, -(mp.gamma + mp.omega0) * tau);
    const std::complex<double> mid = 0.5 * (lo + hi);
    const std::complex<double> dir = 0.5 * (hi - lo);
    const double len2 = std::norm(dir);
    if (len2 < 1e-24) return 0.0;
    const std::complex<double> z{p.x - mid.real(), p.y - mid.imag()};
    return (z.real() * dir.real() + z.imag() * dir.imag()) / len2;
}

double survivor_param(const ModelParams& mp, Regime regime) {
    switch (regime) {
        case Regime::ThreeStrong:
        case Regime::ThreeEqual:
            return 0.0;
        case Regime::ThreeWeak:
            return mp.gamma / mp.omega0;  // -alpha_c
        case Regime::TwoStrong:
            return mp.omega0;
        case Regime::TwoMiddle:
            return 0.5 * critical_frequency_two(mp);
        case Regime::TwoWeak:
            return (mp.omega0 * mp.omega0 - mp.gamma * mp.gamma) / mp.omega0;
    }
    return 0.0;
}

// Front-line / critical-trajectory contact parameters at time t.
std::vector<double> critical_contacts(const ModelParams& mp, double t) {
    std::vector<double> out;
    if (is_three(mp)) {
        if (classify_regime(mp) != Regime::ThreeWeak) return out;
        const CriticalCurve curve = critical_curve_three(mp);
        const double tau_c = 0.5 * curve.t_valid_max;
        auto g = [&](double s) { return frontline_residual_three(curve.at(2.0 * s), mp, t); };
        detail::ContactOptions opt;
        opt.grid = 3000;
        opt.zero_tol = 1e-10;
        opt.probe_tol = 1e-4;
        for (double s : detail::find_contacts(g, 0.0, tau_c, opt)) {
            const DiskPoint p = curve.at(2.0 * s);
            const double alpha = alpha_of_point(p, mp, t);
            if (std::abs(alpha) <= 1.0 + 1e-9 &&
                disk_distance(disk_three(std::clamp(alpha, -1.0, 1.0), mp, t), p) < 1e-6) {
                out.push_back(std::clamp(alpha, -1.0, 1.0));
            }
        }
    } else {
        if (std::abs(mp.omega0) <= 1e-12 * mp.gamma) return out;
        const double t_c = critical_time_two(mp);
        if (t <= t_c * (1.0 - 1e-9)) return out;
        const double wc = critical_frequency_two(mp);
        const auto [wplus, wminus] = boundary_critical_freqs_two(mp, t, 1);
        const double lo = (mp.omega0 > 0.0) ? wminus : wc;
        const double hi = (mp.omega0 > 0.0) ? wc : wplus;

        // Cut-locus arc: the omega_c trajectory up to its cusp time,
        // sampled once as a polyline.
        const int m = 2000;
        std::vector<DiskPoint> arc(m + 1);
        for (int j = 0; j <= m; ++j) arc[j] = disk_two(wc, mp, t_c * j / m);
        auto arc_at = [&](double u) { return disk_two(wc, mp, u); };
        // Signed offset of p from the arc at the nearest polyline node.
        auto signed_offset = [&](const DiskPoint& p) {
            int jb = 0;
            double best = 1e300;
            for (int j = 0; j <= m; ++j) {
                const double d2 = (p.x - arc[j].x) * (p.x - arc[j].x) +
                                  (p.y - arc[j].y) * (p.y - arc[j].y);
                if (d2 < best) {
                    best = d2;
                    jb = j;
                }
            }
            const int j0 = std::max(0, jb - 1), j1 = std::min(m, jb + 1);
            const double tx = arc[j1].x - arc[j0].x, ty = arc[j1].y - arc[j0].y;
            const double norm = std::hypot(tx, ty);
            return std::make_pair(
                (tx * (p.y - arc[jb].y) - ty * (p.x - arc[jb].x)) / norm, jb);
        };
        auto g = [&](double w) { return signed_offset(disk_two(w, mp, t)).first; };
        detail::ContactOptions opt;
        opt.grid = 2400;
        opt.zero_tol = 1e-9;
        opt.probe_tol = 1e-3;
        for (double w : detail::find_contacts(g, lo, hi, opt)) {
            // Reject sign flips produced by argmin jumps: the point must
            // actually lie on the arc.
            const DiskPoint p = disk_two(w, mp, t);
            const auto [off, jb] = signed_offset(p);
            (void)off;
            const double u0 = t_c * std::max(0, jb - 1) / m;
            const double u1 = t_c * std::min(m, jb + 1) / m;
            const auto [u, d2] = detail::golden_min(
                [&](double u) {
                    const DiskPoint c = arc_at(u);
                    return (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
                },
                u0, u1);
            (void)u;
            if (std::sqrt(d2) < 1e-6) out.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Interval> admissible_range(const ModelParams& mp, double t) {
    validate(mp);
    if (t < 0.0) throw std::invalid_argument("admissible_range: t must be >= 0");
    const Regime regime = classify_regime(mp);
    const double surv = survivor_param(mp, regime);
    const double w = std::abs(mp.omega0);
    if (t > worst_case_time(mp) * (1.0 + 1e-12)) return {};

    if (is_three(mp)) {
        if (regime != Regime::ThreeWeak) return {{-1.0, 1.0}};
        const double alpha_c = -mp.gamma / mp.omega0;
        const double t_c = kPi / mp.gamma;
        const double t_i = return_time_three(mp);
        if (t < std::min(t_i, t_c)) {
            return (mp.omega0 > 0.0) ? std::vector<Interval>{{alpha_c, 1.0}}
                                     : std::vector<Interval>{{-1.0, alpha_c}};
        }
        const std::vector<double> contacts = critical_contacts(mp, t);
        double lo = (mp.omega0 > 0.0) ? alpha_c : -1.0;
        double hi = (mp.omega0 > 0.0) ? 1.0 : alpha_c;
        for (double c : contacts) {
            if (c <= surv) lo = std::max(lo, c);
            if (c >= surv) hi = std::min(hi, c);
        }
        if (lo > hi + 1e-9) return {};
        return {{lo, std::max(lo, hi)}};
    }

    const auto [wplus, wminus] = boundary_critical_freqs_two(mp, t, 1);
    double lo = wminus;
    double hi = wplus;
    if (w > 1e-12 * mp.gamma) {
        const double wc = critical_frequency_two(mp);
        if (mp.omega0 > 0.0) {
            hi = std::min(hi, wc);
        } else {
            lo = std::max(lo, wc);
        }
        for (double c : critical_contacts(mp, t)) {
            if (c <= surv) lo = std::max(lo, c);
            if (c >= surv) hi = std::min(hi, c);
        }
    }
    const double slack = 1e-9 * std::max(1.0, std::abs(surv));
    if (lo > hi + slack) return {};
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
    return {{lo, hi}};
}

std::optional<std::pair<double, double>> critical_intersection(const ModelParams& mp, double t) {
    validate(mp);
    const std::vector<double> contacts = critical_contacts(mp, t);
    if (contacts.empty()) return std::nullopt;
    const double surv = survivor_param(mp, classify_regime(mp));
    double lo = contacts.front();
    double hi = contacts.back();
    for (double c : contacts) {
        if (c <= surv) lo = std::max(lo, c);
        if (c >= surv) hi = std::min(hi, c);
    }
    if (lo > hi) lo = hi = (std::abs(lo - surv) < std::abs(hi - surv)) ? lo : hi;
    return std::make_pair(lo, hi);
}

FrontLine frontline_sample_three(const ModelParams& mp, double t, int n, bool full_range) {
    validate(mp);
    if (n < 2) throw std::invalid_argument("frontline_sample_three: n must be >= 2");
    FrontLine fl;
    fl.mode = ControlMode::ThreeControls;
    fl.t = t;
    auto ranges = admissible_range(mp, t);
    fl.admissible = ranges;
    auto flag = [&ranges](double a) {
        for (const Interval& iv : ranges) {
            if (iv.contains(a, 1e-12)) return true;
        }
        return false;
    };
    if (full_range) {
        for (int i = 0; i < n; ++i) {
            const double a = -1.0 + 2.0 * i / (n - 1);
            fl.samples.push_back({a, disk_three(a, mp, t), flag(a)});
        }
    } else if (!ranges.empty()) {
        const Interval iv = ranges.front();
        for (int i = 0; i < n; ++i) {
            const double a = iv.lo + (iv.hi - iv.lo) * i / (n - 1);
            fl.samples.push_back({a, disk_three(a, mp, t), true});
        }
    }
    return fl;
}

FrontLine frontline_sample_two(const ModelParams& mp, double t, int n, bool full_range) {
    validate(mp);
    if (n < 2) throw std::invalid_argument("frontline_sample_two: n must be >= 2");
    FrontLine fl;
    fl.mode = ControlMode::TwoControls;
    fl.t = t;
    auto ranges = admissible_range(mp, t);
    fl.admissible = ranges;
    auto flag = [&ranges](double omega) {
        for (const Interval& iv : ranges) {
            if (iv.contains(omega, 1e-9)) return true;
        }
        return false;
    };
    const double beta_max = 1.0 - 1e-6;
    if (full_range) {
        for (int i = 0; i < n; ++i) {
            const double beta = -beta_max + 2.0 * beta_max * i / (n - 1);
            const double omega = omega_of_beta(mp, beta);
            fl.samples.push_back({omega, disk_two(omega, mp, t), flag(omega)});
        }
    } else if (!ranges.empty()) {
        const Interval iv = ranges.front();
        // beta is decreasing in omega.
        const double b_lo = std::clamp(beta_of_omega(mp, iv.hi), -beta_max, beta_max);
        const double b_hi = std::clamp(beta_of_omega(mp, iv.lo), -beta_max, beta_max);
        for (int i = 0; i < n; ++i) {
            const double beta = b_lo + (b_hi - b_lo) * i / (n - 1);
            const double omega = omega_of_beta(mp, beta);
            fl.samples.push_back({omega, disk_two(omega, mp, t), true});
        }
    }
    return fl;
}

}  // namespace su2opt
