#include "su2opt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "su2opt/extremals.hpp"

namespace su2opt {

OracleConfig OracleConfig::defaults(const ModelParams& mp) {
    OracleConfig cfg;
    cfg.time_step = (kTwoPi / mp.gamma) / 4000.0;
    return cfg;
}

namespace {

// Uniform-cell spatial index over the disk for O(1) nearest-target probes.
class TargetGrid {
  public:
    TargetGrid(const std::vector<DiskPoint>& targets, double cell) : cell_(cell) {
        nx_ = (int)std::ceil(2.2 / cell_) + 2;
        head_.assign((size_t)nx_ * nx_, -1);
        next_.assign(targets.size(), -1);
        for (int i = 0; i < (int)targets.size(); ++i) {
            const size_t c = cell_index(targets[i].x, targets[i].y);
            next_[i] = head_[c];
            head_[c] = i;
        }
    }

    template <typename Visit>
    void probe(double x, double y, Visit&& visit) const {
        const int ix = coord(x), iy = coord(y);
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                const int jx = ix + dx, jy = iy + dy;
                if (jx < 0 || jy < 0 || jx >= nx_ || jy >= nx_) continue;
                for (int i = head_[(size_t)jx * nx_ + jy]; i >= 0; i = next_[i]) {
                    visit(i);
                }
            }
        }
    }

  private:
    int coord(double v) const {
        return std::clamp((int)((v + 1.1) / cell_), 0, nx_ - 1);
    }
    size_t cell_index(double x, double y) const { return (size_t)coord(x) * nx_ + coord(y); }

    double cell_;
    int nx_;
    std::vector<int> head_;
    std::vector<int> next_;
};

}  // namespace

std::vector<std::optional<BruteResult>> brute_march(const std::vector<DiskPoint>& targets,
                                                    const ModelParams& mp,
                                                    const OracleConfig& cfg, double t_cap) {
    validate(mp);
    if (cfg.param_grid_size < 2 || cfg.time_step <= 0.0 || cfg.hit_tolerance <= 0.0) {
        throw std::invalid_argument("brute_march: invalid oracle configuration");
    }
    const int n = cfg.param_grid_size;
    const double tol2 = cfg.hit_tolerance * cfg.hit_tolerance;
    const TargetGrid grid(targets, cfg.hit_tolerance);

    std::vector<std::optional<BruteResult>> results(targets.size());
    std::vector<double> best_dist2(targets.size(), 1e300);
    size_t remaining = targets.size();

    const bool three = mp.mode == ControlMode::ThreeControls;
    const double dtau = 0.5 * cfg.time_step;

    // Two-control grid state: per-parameter phases advanced by rotation.
    std::vector<double> params(n), cw(n, 1.0), sw(n, 0.0), ca(n, 1.0), sa(n, 0.0);
    std::vector<double> dcw(n), dsw(n), dca(n), dsa(n), kfac(n);
    if (three) {
        for (int i = 0; i < n; ++i) params[i] = -1.0 + 2.0 * i / (n - 1);
    } else {
        const double beta_max = 1.0 - 1e-6;
        for (int i = 0; i < n; ++i) {
            const double beta = -beta_max + 2.0 * beta_max * i / (n - 1);
            const double a = mp.gamma / std::sqrt(1.0 - beta * beta);
            params[i] = mp.omega0 - beta * a;
            kfac[i] = beta;
            dcw[i] = std::cos(params[i] * dtau);
            dsw[i] = std::sin(params[i] * dtau);
            dca[i] = std::cos(a * dtau);
            dsa[i] = std::sin(a * dtau);
        }
    }

    const long steps = (long)std::floor(t_cap / cfg.time_step) + 1;
    for (long k = 0; k <= steps && remaining > 0; ++k) {
        const double t = k * cfg.time_step;
        const double tau = 0.5 * t;
        double A = 0, B = 0, C = 0, D = 0;
        if (three) {
            const double cwt = std::cos(mp.omega0 * tau), swt = std::sin(mp.omega0 * tau);
            const double cgt = std::cos(mp.gamma * tau), sgt = std::sin(mp.gamma * tau);
            A = cwt * cgt;
            B = swt * sgt;
            C = -swt * cgt;
            D = cwt * sgt;
        }
        bool hit_this_step = false;
        for (int i = 0; i < n; ++i) {
            double x, y;
            if (three) {
                x = A - params[i] * B;
                y = C - params[i] * D;
            } else {
                x = cw[i] * ca[i] - kfac[i] * sw[i] * sa[i];
                y = -sw[i] * ca[i] - kfac[i] * cw[i] * sa[i];
                const double cw2 = cw[i] * dcw[i] - sw[i] * dsw[i];
                sw[i] = sw[i] * dcw[i] + cw[i] * dsw[i];
                cw[i] = cw2;
                const double ca2 = ca[i] * dca[i] - sa[i] * dsa[i];
                sa[i] = sa[i] * dca[i] + ca[i] * dsa[i];
                ca[i] = ca2;
            }
            grid.probe(x, y, [&](int j) {
                const double dx = x - targets[j].x, dy = y - targets[j].y;
                const double d2 = dx * dx + dy * dy;
                if (d2 > tol2) return;
                if (!results[j]) {
                    results[j] = BruteResult{t, params[i]};
                    best_dist2[j] = d2;
                    --remaining;
                    hit_this_step = true;
                } else if (results[j]->t_hat == t && d2 < best_dist2[j]) {
                    results[j]->param_hat = params[i];
                    best_dist2[j] = d2;
                }
            });
        }
        (void)hit_this_step;
        if (!three && (k & 1023) == 1023) {
            for (int i = 0; i < n; ++i) {
                const double rw = 1.0 / std::hypot(cw[i], sw[i]);
                cw[i] *= rw;
                sw[i] *= rw;
                const double ra = 1.0 / std::hypot(ca[i], sa[i]);
                ca[i] *= ra;
                sa[i] *= ra;
            }
        }
    }
    return results;
}

BruteResult brute_min_time(const DiskPoint& target, const ModelParams& mp,
                           const OracleConfig& cfg) {
    const double cap = 1.5 * diameter(mp).t_max;
    auto r = brute_march({target}, mp, cfg, cap);
    if (!r[0]) {
        throw std::runtime_error("brute_min_time: target not reached within 1.5x the diameter");
    }
    return *r[0];
}

std::vector<BruteResult> brute_min_time_batch(const std::vector<DiskPoint>& targets,
                                              const ModelParams& mp, const OracleConfig& cfg) {
    const double cap = 1.5 * diameter(mp).t_max;
    auto raw = brute_march(targets, mp, cfg, cap);
    std::vector<BruteResult> out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        if (!raw[i]) {
            throw std::runtime_error("brute_min_time_batch: target not reached within 1.5x the diameter");
        }
        out.push_back(*raw[i]);
    }
    return out;
}

double brute_diameter(const ModelParams& mp, const OracleConfig& cfg) {
    std::vector<DiskPoint> targets;
    targets.reserve(60 * 120);
    for (int j = 1; j <= 60; ++j) {
        const double r = j / 60.0;
        for (int l = 0; l < 120; ++l) {
            const double th = kTwoPi * l / 120.0;
            targets.push_back({r * std::cos(th), r * std::sin(th)});
        }
    }
    double worst = 0.0;
    for (const BruteResult& r : brute_min_time_batch(targets, mp, cfg)) {
        worst = std::max(worst, r.t_hat);
    }
    return worst;
}

namespace {

int replay_sample_count(const Solution& sol, const ModelParams& mp) {
    const double rate = std::max(std::abs(mp.omega0), std::abs(sol.param)) + mp.gamma;
    const double t = std::max(sol.t_f, 1e-6);
    // Piecewise-linear pulse bias ~ gamma*rate^2*t^3/(16 n^2); keep it near 1e-8.
    const double n = 2.0 * std::sqrt(mp.gamma * rate * rate * t * t * t / 1.6e-7);
    return (int)std::clamp(n, 4096.0, 400000.0);
}

}  // namespace

VerifyReport verify_solution(const Solution& sol, const DiskPoint& target, const ModelParams& mp,
                             const OracleConfig& cfg) {
    validate(mp);
    VerifyReport rep;
    const bool three = mp.mode == ControlMode::ThreeControls;
    const DiskPoint closed =
        three ? disk_three(sol.param, mp, sol.t_f) : disk_two(sol.param, mp, sol.t_f);
    rep.closed_form_residual = disk_distance(closed, target);

    const auto samples = synthesize_controls(sol, mp, replay_sample_count(sol, mp));
    const SU2Operator replayed = propagate_samples(samples, mp, default_steps(mp, sol.t_f));
    rep.replay_residual = disk_distance(project(replayed), target);

    const double t_before = sol.t_f - 2.0 * cfg.time_step;
    const bool interior = std::hypot(target.x, target.y) < 1.0 - 1e-9;
    if (t_before > 0.0 && interior) {
        rep.premature_check_applied = true;
        auto early = brute_march({target}, mp, cfg, t_before);
        if (early[0] && early[0]->t_hat < t_before) {
            rep.premature_hit_time = early[0]->t_hat;
        }
    }

    if (rep.closed_form_residual > 1e-9) {
        rep.failed_check = "closed_form";
    } else if (rep.replay_residual > 1e-6) {
        rep.failed_check = "pulse_replay";
    } else if (rep.premature_hit_time) {
        rep.failed_check = "earlier_oracle_hit";
    }
    rep.passed = rep.failed_check.empty();
    return rep;
}

VerifyReport verify_solution(const Solution& sol, const DiskPoint& target, const ModelParams& mp) {
    return verify_solution(sol, target, mp, OracleConfig::defaults(mp));
}

}  // namespace su2opt
