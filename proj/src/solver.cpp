#include "su2opt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "su2opt/detail/rootfind.hpp"

namespace su2opt {

namespace {

constexpr double kPi = 0.5 * kTwoPi;

void require_disk(const DiskPoint& p, const char* op) {
    if (p.x * p.x + p.y * p.y > 1.0 + 1e-9) {
        throw std::invalid_argument(std::string(op) + ": target outside the unit disk");
    }
}

bool is_identity(const DiskPoint& p) {
    return std::hypot(p.x - 1.0, p.y) < 1e-12;
}

}  // namespace

Solution min_time_three(const DiskPoint& target, const ModelParams& mp) {
    validate(mp);
    if (mp.mode != ControlMode::ThreeControls) {
        throw std::domain_error("min_time_three: control mode mismatch");
    }
    require_disk(target, "min_time_three");
    const Regime regime = classify_regime(mp);
    if (is_identity(target)) return {0.0, 0.0, 0.0, 0.0, regime};

    const double r_f = std::min(1.0, std::hypot(target.x, target.y));
    const double psi_f = std::atan2(target.y, target.x);
    // Membership equation for the target on the front line at half-time tau.
    auto f = [&](double tau) {
        return r_f * std::cos(mp.omega0 * tau + psi_f) - std::cos(mp.gamma * tau);
    };
    // Returns the solution at a root tau, or nullopt when the target sits
    // outside the segment there.
    auto try_root = [&](double tau) -> std::optional<Solution> {
        const double cw = std::cos(mp.omega0 * tau), sw = std::sin(mp.omega0 * tau);
        const double cg = std::cos(mp.gamma * tau), sg = std::sin(mp.gamma * tau);
        const double A = cw * cg, B = sw * sg, C = -sw * cg, D = cw * sg;
        double alpha;
        if (sg * sg < 1e-20) {
            // Segment collapsed to one point; any admissible alpha reaches it.
            if (std::hypot(A - target.x, C - target.y) > 1e-8) return std::nullopt;
            auto ranges = admissible_range(mp, 2.0 * tau);
            alpha = ranges.empty() ? 0.0 : 0.5 * (ranges.front().lo + ranges.front().hi);
        } else {
            alpha = (B * (A - target.x) + D * (C - target.y)) / (sg * sg);
            if (std::abs(alpha) > 1.0 + 1e-9) return std::nullopt;
            alpha = std::clamp(alpha, -1.0, 1.0);
        }
        const double residual =
            std::hypot(A - alpha * B - target.x, C - alpha * D - target.y);
        if (residual > 1e-8) return std::nullopt;
        return Solution{2.0 * tau, alpha, 0.0, residual, regime};
    };

    auto fprime = [&](double tau) {
        return -mp.omega0 * r_f * std::sin(mp.omega0 * tau + psi_f) +
               mp.gamma * std::sin(mp.gamma * tau);
    };
    const double step = kPi / (50.0 * (mp.gamma + std::abs(mp.omega0)));
    const double curvature = mp.gamma * mp.gamma + mp.omega0 * mp.omega0;
    const double probe = std::max(1e-6, curvature * step * step);
    const double tau_hi = 0.5 * worst_case_time(mp) + 2.0 * step;
    double prev_tau = 0.0;
    double prev_f = f(0.0);
    double pp_f = prev_f;
    for (double tau = step; tau <= tau_hi + step; tau += step) {
        const double ft = f(tau);
        if ((prev_f < 0.0) != (ft < 0.0) || prev_f == 0.0) {
            const double root = detail::bisect_root(f, prev_tau, tau, prev_f, ft);
            if (auto sol = try_root(root)) return *sol;
        } else if (std::abs(prev_f) < probe && std::abs(prev_f) <= std::abs(pp_f) &&
                   std::abs(prev_f) <= std::abs(ft)) {
            // Tangential root (front line grazes the target): locate the
            // extremum of f from its derivative.
            const double lo = std::max(0.0, prev_tau - step);
            const double flo = fprime(lo), fhi = fprime(tau);
            double tmin;
            if ((flo < 0.0) != (fhi < 0.0)) {
                tmin = detail::bisect_root(fprime, lo, tau, flo, fhi);
            } else {
                tmin = detail::golden_min([&f](double x) { return std::abs(f(x)); }, lo, tau)
                           .first;
            }
            if (std::abs(f(tmin)) <= 1e-9 * (1.0 + r_f)) {
                if (auto sol = try_root(tmin)) return *sol;
            }
        }
        pp_f = prev_f;
        prev_f = ft;
        prev_tau = tau;
    }
    throw std::runtime_error("min_time_three: no front-line crossing found within the diameter");
}

Solution min_time_three_equal(const DiskPoint& target, const ModelParams& mp) {
    validate(mp);
    const Regime regime = classify_regime(mp);
    if (regime != Regime::ThreeEqual) {
        throw std::domain_error("min_time_three_equal: requires gamma = |omega0|");
    }
    if (is_identity(target)) return {0.0, 0.0, 0.0, 0.0, regime};
    const double sign = (mp.omega0 > 0.0) ? 1.0 : -1.0;
    double alpha = -sign * (target.x + target.y * target.y / (target.x - 1.0));
    alpha = std::clamp(alpha, -1.0, 1.0);
    const double one_minus_x = 1.0 - target.x;
    const double theta = std::atan2(2.0 * target.y * one_minus_x,
                                    target.y * target.y - one_minus_x * one_minus_x);
    const double t_f = (sign > 0.0) ? (kTwoPi - wrap_two_pi(theta)) / mp.gamma
                                    : wrap_two_pi(theta) / mp.gamma;
    const double residual = disk_distance(disk_three(alpha, mp, t_f), target);
    return {t_f, alpha, 0.0, residual, regime};
}

namespace {

// Distance from the target to the two-control front line at time t,
// minimized over the compactified frequency parameter.
struct FrontDistance {
    const ModelParams& mp;
    DiskPoint target;
    double beta_cap;

    double point_dist(double beta, double t) const {
        return disk_distance(disk_two_beta(beta, t), target);
    }
    DiskPoint disk_two_beta(double beta, double t) const {
        const double a = mp.gamma / std::sqrt(std::max(1e-300, 1.0 - beta * beta));
        const double omega = mp.omega0 - beta * a;
        const double tau = 0.5 * t;
        const double cw = std::cos(omega * tau), sw = std::sin(omega * tau);
        const double ca = std::cos(a * tau), sa = std::sin(a * tau);
        return {cw * ca - beta * sw * sa, -sw * ca - beta * cw * sa};
    }
    // (distance, beta) after a coarse scan plus local refinement.
    std::pair<double, double> operator()(double t) const {
        const int m = 600;
        double best = 1e300, best_beta = 0.0;
        for (int i = 0; i <= m; ++i) {
            const double beta = -beta_cap + 2.0 * beta_cap * i / m;
            const double d = point_dist(beta, t);
            if (d < best) {
                best = d;
                best_beta = beta;
            }
        }
        const double cell = 2.0 * beta_cap / m;
        auto g = [&](double beta) { return point_dist(beta, t); };
        const auto [beta, d] = detail::golden_min(
            g, std::max(-beta_cap, best_beta - cell), std::min(beta_cap, best_beta + cell), 120);
        return (d < best) ? std::make_pair(d, beta) : std::make_pair(best, best_beta);
    }
};

}  // namespace

Solution min_time_two(const DiskPoint& target, const ModelParams& mp) {
    validate(mp);
    if (mp.mode != ControlMode::TwoControls) {
        throw std::domain_error("min_time_two: control mode mismatch");
    }
    require_disk(target, "min_time_two");
    const Regime regime = classify_regime(mp);
    if (is_identity(target)) return {0.0, mp.omega0, 0.0, 0.0, regime};
    const double r_f = std::hypot(target.x, target.y);
    if (r_f >= 1.0 - 1e-9) {
        // Diagonal operators force sin(a*tau) = 0 exactly; handled in
        // closed form instead of by the generic scan.
        return diagonal_min_time(wrap_two_pi(std::atan2(target.y, target.x)), mp);
    }

    const double a_ref = std::hypot(mp.omega0, mp.gamma) + mp.gamma;
    const double h = kPi / (100.0 * a_ref);
    const double t_stop = 1.05 * worst_case_time(mp) + 3.0 * h;
    const FrontDistance dist{mp, target, std::min(1.0 - 1e-9, r_f + 0.2)};

    auto refine = [&](double lo, double hi) -> std::optional<std::pair<double, double>> {
        auto d_of_t = [&](double t) { return dist(t).first; };
        auto [t, d] = detail::golden_min(d_of_t, lo, hi, 140);
        if (d > 1e-10) return std::nullopt;
        // A second zero can share the bracket when the front grazes the
        // target; keep the earliest one.
        const double gap = 1e-7;
        for (int pass = 0; pass < 5 && t - lo > 2.0 * gap; ++pass) {
            const auto [tl, dl] = detail::golden_min(d_of_t, lo, t - gap, 140);
            if (dl <= 1e-10 && tl < t - 1.5 * gap) {
                t = tl;
                d = dl;
            } else {
                break;
            }
        }
        return std::make_pair(t, d);
    };

    double d_prev2 = 1e300, d_prev = disk_distance({1.0, 0.0}, target);
    double t_prev = 0.0;
    for (double t = h; t <= t_stop; t += h) {
        const double d = dist(t).first;
        if (d_prev <= d_prev2 && d_prev <= d && d_prev < 0.5) {
            if (auto hit = refine(std::max(0.0, t_prev - h), t)) {
                const auto [t_f, res] = *hit;
                const double beta = dist(t_f).second;
                const double a = mp.gamma / std::sqrt(std::max(1e-300, 1.0 - beta * beta));
                return {t_f, mp.omega0 - beta * a, 0.0, res, regime};
            }
        }
        d_prev2 = d_prev;
        d_prev = d;
        t_prev = t;
    }
    throw std::runtime_error("min_time_two: no front-line crossing found within the diameter");
}

Diameter diameter(const ModelParams& mp) {
    validate(mp);
    const Regime regime = classify_regime(mp);
    Diameter d;
    d.regime = regime;
    const double w = std::abs(mp.omega0);
    switch (regime) {
        case Regime::ThreeStrong: {
            d.t_max = tmax_three_strong(mp.gamma);
            const double ang = kPi * mp.omega0 / mp.gamma;
            d.worst_point = {-std::cos(ang), std::sin(ang)};
            d.worst_param = 0.0;
            break;
        }
        case Regime::ThreeEqual: {
            d.t_max = tmax_three_strong(mp.gamma);
            d.worst_point = {1.0, 0.0};
            d.worst_param = (mp.omega0 > 0.0) ? -1.0 : 1.0;
            break;
        }
        case Regime::ThreeWeak: {
            d.t_max = tmax_three_weak(mp.gamma, mp.omega0);
            const double tau_bar = (kPi / (2.0 * mp.gamma)) * (1.0 - mp.gamma / w);
            d.worst_point = disk_three(-mp.gamma / mp.omega0, mp, 2.0 * tau_bar);
            d.worst_param = mp.gamma / mp.omega0;
            d.open_limit = true;
            break;
        }
        case Regime::TwoStrong: {
            d.t_max = tmax_two_strong(mp.gamma);
            const double psi_max = kPi * (1.0 - mp.omega0 / mp.gamma);
            d.worst_point = {std::cos(psi_max), std::sin(psi_max)};
            d.worst_param = mp.omega0;
            break;
        }
        case Regime::TwoMiddle: {
            d.t_max = tmax_two_middle(mp.gamma, mp.omega0);
            d.worst_point = {1.0, 0.0};
            d.worst_param = 0.5 * critical_frequency_two(mp);
            break;
        }
        case Regime::TwoWeak: {
            d.t_max = tmax_two_weak(mp.gamma, mp.omega0);
            const double wc = critical_frequency_two(mp);
            const double a_c = TwoControlExtremal{wc, 0.0}.rabi_rate(mp);
            const double tau_bar =
                (kPi / (2.0 * a_c)) * (std::abs(wc) - 2.0 * a_c) / (std::abs(wc) - a_c);
            d.worst_point = disk_two(wc, mp, 2.0 * tau_bar);
            d.worst_param = (mp.omega0 * mp.omega0 - mp.gamma * mp.gamma) / mp.omega0;
            d.open_limit = true;
            break;
        }
    }
    return d;
}

Solution diagonal_min_time(double lambda, const ModelParams& mp) {
    validate(mp);
    const Regime regime = classify_regime(mp);
    lambda = wrap_two_pi(lambda);
    const DiskPoint target{std::cos(lambda), std::sin(lambda)};
    if (lambda == 0.0) {
        return {0.0, (mp.mode == ControlMode::ThreeControls) ? 1.0 : mp.omega0, 0.0, 0.0, regime};
    }
    if (mp.mode == ControlMode::ThreeControls) {
        const bool fast_branch = mp.omega0 >= (kPi - lambda) / kPi * mp.gamma;
        const double t_f = fast_branch ? (2.0 * kTwoPi - 2.0 * lambda) / (mp.gamma + mp.omega0)
                                       : 2.0 * lambda / (mp.gamma - mp.omega0);
        const double alpha = fast_branch ? 1.0 : -1.0;
        return {t_f, alpha, 0.0, disk_distance(disk_three(alpha, mp, t_f), target), regime};
    }
    const double W = mp.omega0 * mp.omega0 + mp.gamma * mp.gamma;
    const double cap =
        std::sqrt(kPi * kPi * mp.omega0 * mp.omega0 + (2.0 * kPi - lambda) * lambda * mp.gamma * mp.gamma);
    const double tau_f = ((kPi - lambda) * mp.omega0 + cap) / W;
    const double t_f = 2.0 * tau_f;
    const auto [wplus, wminus] = boundary_critical_freqs_two(mp, t_f, 1);
    const bool minus_branch = mp.omega0 * cap >= (kPi - lambda) * mp.gamma * mp.gamma;
    const double omega = minus_branch ? wminus : wplus;
    return {t_f, omega, 0.0, disk_distance(disk_two(omega, mp, t_f), target), regime};
}

Solution swap_min_time(const ModelParams& mp) {
    validate(mp);
    const double t_f = kPi / mp.gamma;
    const double param = (mp.mode == ControlMode::ThreeControls) ? 0.0 : mp.omega0;
    const DiskPoint p = (mp.mode == ControlMode::ThreeControls) ? disk_three(param, mp, t_f)
                                                                : disk_two(param, mp, t_f);
    return {t_f, param, 0.0, std::hypot(p.x, p.y), classify_regime(mp)};
}

Circle separatrix_two(const ModelParams& mp) {
    const double wc = critical_frequency_two(mp);
    (void)wc;
    const double W = mp.omega0 * mp.omega0 + mp.gamma * mp.gamma;
    return {{mp.gamma * mp.gamma / W, 0.0}, mp.omega0 * mp.omega0 / W};
}

std::vector<ControlSample> synthesize_controls(const Solution& sol, const ModelParams& mp, int n) {
    validate(mp);
    if (n < 2) throw std::invalid_argument("synthesize_controls: n must be >= 2");
    std::vector<ControlSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = sol.t_f * i / (n - 1);
        out.push_back(mp.mode == ControlMode::ThreeControls
                          ? controls_three({sol.param, sol.phi}, mp, t)
                          : controls_two({sol.param, sol.phi}, mp, t));
    }
    return out;
}

}  // namespace su2opt
