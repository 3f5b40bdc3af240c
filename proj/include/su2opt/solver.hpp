#pragma once

#include <vector>

#include "su2opt/extremals.hpp"
#include "su2opt/frontline.hpp"
#include "su2opt/su2.hpp"

namespace su2opt {

/// A solved minimum-time transfer: extremal parameter (alpha or omega),
/// transverse phase, and the disk-distance residual at t_f.
struct Solution {
    double t_f{0.0};
    double param{0.0};
    double phi{0.0};
    double residual{0.0};
    Regime regime{Regime::ThreeStrong};
};

/// Worst-case operator and time. open_limit marks regimes whose worst
/// point is only approached, not attained, along an optimal trajectory.
struct Diameter {
    double t_max{0.0};
    DiskPoint worst_point;
    double worst_param{0.0};
    Regime regime{Regime::ThreeStrong};
    bool open_limit{false};
};

struct Circle {
    DiskPoint center;
    double radius{0.0};
};

/// Smallest time at which the three-control front line reaches the target,
/// found by scanning the membership equation and bisecting its first root.
Solution min_time_three(const DiskPoint& target, const ModelParams& mp);

/// Closed form for gamma = |omega0| (circular trajectories).
Solution min_time_three_equal(const DiskPoint& target, const ModelParams& mp);

/// Smallest time at which the two-control front line reaches the target.
/// Targets on the unit circle are routed to diagonal_min_time.
Solution min_time_two(const DiskPoint& target, const ModelParams& mp);

Diameter diameter(const ModelParams& mp);

/// Minimum time to the diagonal operator diag(e^{i lambda}, e^{-i lambda}).
Solution diagonal_min_time(double lambda, const ModelParams& mp);

Solution swap_min_time(const ModelParams& mp);

/// Circle traced by the omega_c extremal, separating trajectories that
/// reach diagonal operators from the rest. Requires omega0 != 0.
Circle separatrix_two(const ModelParams& mp);

/// n uniform samples of the optimal pulse on [0, t_f].
std::vector<ControlSample> synthesize_controls(const Solution& sol, const ModelParams& mp, int n);

}  // namespace su2opt
