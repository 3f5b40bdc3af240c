#include "su2opt/extremals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace su2opt {

namespace {

void require_mode(const ModelParams& mp, ControlMode want, const char* op) {
    if (mp.mode != want) {
        throw std::domain_error(std::string(op) + ": control mode mismatch");
    }
}

}  // namespace

double TwoControlExtremal::rabi_rate(const ModelParams& mp) const {
    return std::hypot(detuning(mp), mp.gamma);
}

ControlSample controls_three(const ThreeControlExtremal& e, const ModelParams& mp, double t) {
    require_mode(mp, ControlMode::ThreeControls, "controls_three");
    const double transverse = mp.gamma * std::sqrt(std::max(0.0, 1.0 - e.alpha * e.alpha));
    const double phase = mp.omega0 * t + e.phi;
    return {t, transverse * std::cos(phase), transverse * std::sin(phase), mp.gamma * e.alpha};
}

ControlSample controls_two(const TwoControlExtremal& e, const ModelParams& mp, double t) {
    require_mode(mp, ControlMode::TwoControls, "controls_two");
    const double phase = e.omega * t + e.phi;
    return {t, mp.gamma * std::cos(phase), mp.gamma * std::sin(phase), 0.0};
}

SU2Operator state_three(const ThreeControlExtremal& e, const ModelParams& mp, double t) {
    const double tau = 0.5 * t;
    const double cg = std::cos(mp.gamma * tau);
    const double sg = std::sin(mp.gamma * tau);
    const double transverse = std::sqrt(std::max(0.0, 1.0 - e.alpha * e.alpha));
    SU2Operator m;
    m.a = std::polar(1.0, -mp.omega0 * tau) * std::complex<double>(cg, -e.alpha * sg);
    m.b = std::complex<double>(0.0, -transverse * sg) * std::polar(1.0, -(mp.omega0 * tau + e.phi));
    return m;
}

SU2Operator state_two(const TwoControlExtremal& e, const ModelParams& mp, double t) {
    const double tau = 0.5 * t;
    const double b = e.detuning(mp);
    const double a = e.rabi_rate(mp);
    const double ca = std::cos(a * tau);
    const double sa = std::sin(a * tau);
    SU2Operator m;
    m.a = std::polar(1.0, -e.omega * tau) * std::complex<double>(ca, -(b / a) * sa);
    m.b = std::complex<double>(0.0, -(mp.gamma / a) * sa) * std::polar(1.0, -(e.omega * tau + e.phi));
    return m;
}

DiskPoint disk_three(double alpha, const ModelParams& mp, double t) {
    const double tau = 0.5 * t;
    const double cw = std::cos(mp.omega0 * tau);
    const double sw = std::sin(mp.omega0 * tau);
    const double cg = std::cos(mp.gamma * tau);
    const double sg = std::sin(mp.gamma * tau);
    return {cw * cg - alpha * sw * sg, -sw * cg - alpha * cw * sg};
}

DiskPoint disk_two(double omega, const ModelParams& mp, double t) {
    const double tau = 0.5 * t;
    const TwoControlExtremal e{omega, 0.0};
    const double k = e.detuning(mp) / e.rabi_rate(mp);
    const double cw = std::cos(omega * tau);
    const double sw = std::sin(omega * tau);
    const double ca = std::cos(e.rabi_rate(mp) * tau);
    const double sa = std::sin(e.rabi_rate(mp) * tau);
    return {cw * ca - k * sw * sa, -sw * ca - k * cw * sa};
}

PolarPoint polar_two(double omega, const ModelParams& mp, double t) {
    const double tau = 0.5 * t;
    const TwoControlExtremal e{omega, 0.0};
    const double b = e.detuning(mp);
    const double a = e.rabi_rate(mp);
    const double arch = a * tau;
    const double half_pi = 0.25 * kTwoPi;
    if (arch > 2.0 * half_pi + 1e-12) {
        throw std::domain_error("polar_two: t outside the first-arch domain");
    }
    const double sa = std::sin(arch);
    PolarPoint out;
    out.r2 = 1.0 - (mp.gamma * mp.gamma) / (a * a) * sa * sa;
    double psi;
    if (std::abs(arch - half_pi) < 1e-12) {
        // Fill the tangent singularity by its one-sided limit.
        psi = omega * tau + ((b > 0.0) ? half_pi : (b < 0.0) ? -half_pi : 0.0);
    } else if (arch < half_pi) {
        psi = omega * tau + std::atan((b / a) * std::tan(arch));
    } else {
        psi = 2.0 * half_pi + omega * tau + std::atan((b / a) * std::tan(arch));
    }
    out.psi = wrap_two_pi(psi);
    return out;
}

Costate costate_three(const ThreeControlExtremal& e, const ModelParams& mp, double t) {
    Costate c;
    c.bz = e.alpha;
    c.mu = std::sqrt(std::max(0.0, 1.0 - e.alpha * e.alpha));
    c.phase = e.phi;
    if (std::abs(e.alpha) >= 1.0 - 1e-14) {
        c.bz = (e.alpha >= 0.0) ? 1.0 : -1.0;
        c.mu = 0.0;
        c.degenerate = true;
        return c;
    }
    const double phase = mp.omega0 * t + e.phi;
    c.bx = c.mu * std::cos(phase);
    c.by = c.mu * std::sin(phase);
    return c;
}

Costate costate_two(const TwoControlExtremal& e, const ModelParams& mp, double t) {
    Costate c;
    c.mu = 1.0;
    c.phase = e.phi;
    c.bz = e.detuning(mp) / mp.gamma;
    const double phase = e.omega * t + e.phi;
    c.bx = std::cos(phase);
    c.by = std::sin(phase);
    return c;
}

double verify_pmp(const ThreeControlExtremal& e, const ModelParams& mp,
                  const std::vector<double>& t_grid) {
    double worst = 0.0;
    for (double t : t_grid) {
        const Costate c = costate_three(e, mp, t);
        if (c.degenerate) {
            throw std::domain_error("verify_pmp: degenerate costate (|alpha| = 1)");
        }
        const double norm = std::sqrt(c.bx * c.bx + c.by * c.by + c.bz * c.bz);
        const ControlSample u = controls_three(e, mp, t);
        worst = std::max(worst, std::abs(u.ux - mp.gamma * c.bx / norm));
        worst = std::max(worst, std::abs(u.uy - mp.gamma * c.by / norm));
        worst = std::max(worst, std::abs(u.uz - mp.gamma * c.bz / norm));
    }
    return worst;
}

double verify_pmp(const TwoControlExtremal& e, const ModelParams& mp,
                  const std::vector<double>& t_grid) {
    double worst = 0.0;
    for (double t : t_grid) {
        const Costate c = costate_two(e, mp, t);
        const double norm = std::hypot(c.bx, c.by);
        const ControlSample u = controls_two(e, mp, t);
        worst = std::max(worst, std::abs(u.ux - mp.gamma * c.bx / norm));
        worst = std::max(worst, std::abs(u.uy - mp.gamma * c.by / norm));
        worst = std::max(worst, std::abs(u.uz));
    }
    return worst;
}

namespace {

struct Column {
    std::complex<double> c0{1.0, 0.0};
    std::complex<double> c1{0.0, 0.0};
};

Column deriv(const Column& c, const ControlSample& u, double omega0) {
    const std::complex<double> i{0.0, 1.0};
    const double h11 = 0.5 * (omega0 + u.uz);
    const std::complex<double> h01{0.5 * u.ux, -0.5 * u.uy};
    const std::complex<double> h10{0.5 * u.ux, 0.5 * u.uy};
    Column d;
    d.c0 = -i * (h11 * c.c0 + h01 * c.c1);
    d.c1 = -i * (h10 * c.c0 - h11 * c.c1);
    return d;
}

}  // namespace

SU2Operator propagate_numeric(const std::function<ControlSample(double)>& controls,
                              const ModelParams& mp, double t_final, int steps) {
    if (steps < 1) throw std::invalid_argument("propagate_numeric: steps must be >= 1");
    Column c;
    const double h = t_final / steps;
    for (int n = 0; n < steps; ++n) {
        const double t = n * h;
        const Column k1 = deriv(c, controls(t), mp.omega0);
        Column mid{c.c0 + 0.5 * h * k1.c0, c.c1 + 0.5 * h * k1.c1};
        const Column k2 = deriv(mid, controls(t + 0.5 * h), mp.omega0);
        mid = {c.c0 + 0.5 * h * k2.c0, c.c1 + 0.5 * h * k2.c1};
        const Column k3 = deriv(mid, controls(t + 0.5 * h), mp.omega0);
        const Column end{c.c0 + h * k3.c0, c.c1 + h * k3.c1};
        const Column k4 = deriv(end, controls(t + h), mp.omega0);
        c.c0 += (h / 6.0) * (k1.c0 + 2.0 * k2.c0 + 2.0 * k3.c0 + k4.c0);
        c.c1 += (h / 6.0) * (k1.c1 + 2.0 * k2.c1 + 2.0 * k3.c1 + k4.c1);
        const double norm = std::sqrt(std::norm(c.c0) + std::norm(c.c1));
        c.c0 /= norm;
        c.c1 /= norm;
    }
    SU2Operator m;
    m.a = c.c0;
    m.b = -std::conj(c.c1);
    return m;
}

SU2Operator propagate_samples(const std::vector<ControlSample>& samples,
                              const ModelParams& mp, int steps) {
    if (samples.size() < 2) throw std::invalid_argument("propagate_samples: need >= 2 samples");
    auto lerp = [&samples](double t) -> ControlSample {
        if (t <= samples.front().t) return samples.front();
        if (t >= samples.back().t) return samples.back();
        auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                                   [](double v, const ControlSample& s) { return v < s.t; });
        auto lo = hi - 1;
        const double w = (t - lo->t) / (hi->t - lo->t);
        return {t, lo->ux + w * (hi->ux - lo->ux), lo->uy + w * (hi->uy - lo->uy),
                lo->uz + w * (hi->uz - lo->uz)};
    };
    return propagate_numeric(lerp, mp, samples.back().t, steps);
}

namespace {

struct BVec {
    double bx, by, bz;
};

BVec costate_deriv(const BVec& b, const ControlSample& u, double omega0) {
    return {-(omega0 + u.uz) * b.by + u.uy * b.bz,
            (omega0 + u.uz) * b.bx - u.ux * b.bz,
            u.ux * b.by - u.uy * b.bx};
}

std::vector<Costate> propagate_costate(const std::function<ControlSample(double)>& controls,
                                       const ModelParams& mp, BVec b,
                                       const std::vector<double>& t_grid, int steps) {
    std::vector<Costate> out;
    out.reserve(t_grid.size());
    const double t_final = t_grid.empty() ? 0.0 : t_grid.back();
    double t = 0.0;
    for (double t_target : t_grid) {
        const int n = std::max(1, (int)std::ceil(steps * (t_target - t) / std::max(t_final, 1e-300)));
        const double h = (t_target - t) / n;
        for (int j = 0; j < n && h > 0.0; ++j) {
            const BVec k1 = costate_deriv(b, controls(t), mp.omega0);
            BVec mid{b.bx + 0.5 * h * k1.bx, b.by + 0.5 * h * k1.by, b.bz + 0.5 * h * k1.bz};
            const BVec k2 = costate_deriv(mid, controls(t + 0.5 * h), mp.omega0);
            mid = {b.bx + 0.5 * h * k2.bx, b.by + 0.5 * h * k2.by, b.bz + 0.5 * h * k2.bz};
            const BVec k3 = costate_deriv(mid, controls(t + 0.5 * h), mp.omega0);
            const BVec end{b.bx + h * k3.bx, b.by + h * k3.by, b.bz + h * k3.bz};
            const BVec k4 = costate_deriv(end, controls(t + h), mp.omega0);
            b.bx += (h / 6.0) * (k1.bx + 2.0 * k2.bx + 2.0 * k3.bx + k4.bx);
            b.by += (h / 6.0) * (k1.by + 2.0 * k2.by + 2.0 * k3.by + k4.by);
            b.bz += (h / 6.0) * (k1.bz + 2.0 * k2.bz + 2.0 * k3.bz + k4.bz);
            t += h;
        }
        t = t_target;
        Costate c;
        c.bx = b.bx;
        c.by = b.by;
        c.bz = b.bz;
        c.mu = std::hypot(b.bx, b.by);
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::vector<Costate> propagate_costate_three(const ThreeControlExtremal& e,
                                             const ModelParams& mp,
                                             const std::vector<double>& t_grid, int steps) {
    const Costate c0 = costate_three(e, mp, 0.0);
    auto controls = [&](double t) { return controls_three(e, mp, t); };
    return propagate_costate(controls, mp, {c0.bx, c0.by, c0.bz}, t_grid, steps);
}

std::vector<Costate> propagate_costate_two(const TwoControlExtremal& e,
                                           const ModelParams& mp,
                                           const std::vector<double>& t_grid, int steps) {
    const Costate c0 = costate_two(e, mp, 0.0);
    auto controls = [&](double t) { return controls_two(e, mp, t); };
    return propagate_costate(controls, mp, {c0.bx, c0.by, c0.bz}, t_grid, steps);
}

int default_steps(const ModelParams& mp, double t_final) {
    const double n = 4096.0 * mp.gamma * std::abs(t_final);
    return std::max(64, (int)std::min(2.0e7, std::ceil(n)));
}

}  // namespace su2opt
