#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "su2opt/extremals.hpp"
#include "su2opt/su2.hpp"

namespace su2opt {

struct Interval {
    double lo{0.0};
    double hi{0.0};
    bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
};

struct FrontLineSample {
    double param{0.0};
    DiskPoint point;
    bool admissible{true};
};

/// Endpoints of the candidate optimal trajectories at a fixed time,
/// ordered by the extremal parameter (alpha or omega).
struct FrontLine {
    ControlMode mode{ControlMode::ThreeControls};
    double t{0.0};
    std::vector<FrontLineSample> samples;
    std::vector<Interval> admissible;
};

/// Self-intersection locus of the evolving front lines; itself an
/// extremal trajectory, optimal on [0, t_valid_max].
struct CriticalCurve {
    ControlMode mode{ControlMode::ThreeControls};
    ModelParams mp;
    double param_c{0.0};
    double t_valid_max{0.0};

    DiskPoint at(double t) const;
};

struct CuspPoint {
    double t_c{0.0};
    DiskPoint point;
};

/// Signed distance of a point from the three-control front line at time t.
double frontline_residual_three(const DiskPoint& p, const ModelParams& mp, double t);

/// Signed residual of the tangent line to the two-control front line at
/// the point labeled omega.
double tangent_residual_two(const DiskPoint& p, double omega, const ModelParams& mp, double t);

FrontLine frontline_sample_three(const ModelParams& mp, double t, int n, bool full_range = false);
FrontLine frontline_sample_two(const ModelParams& mp, double t, int n, bool full_range = false);

/// Requires gamma < |omega0| (three controls).
CriticalCurve critical_curve_three(const ModelParams& mp);

/// Cusp of the three-control critical curve, where it stops being optimal.
CuspPoint cusp_three(const ModelParams& mp);

/// Time at which a front-line endpoint first returns to (1, 0).
double return_time_three(const ModelParams& mp);

/// Requires omega0 != 0: with omega0 = 0 the critical trajectory collapses
/// to the initial point.
double critical_frequency_two(const ModelParams& mp);
double critical_time_two(const ModelParams& mp);
CriticalCurve critical_curve_two(const ModelParams& mp);

/// Frequencies whose trajectories touch the unit circle at time t;
/// defined for tau <= k*pi/gamma. Returned as (omega_plus, omega_minus).
std::pair<double, double> boundary_critical_freqs_two(const ModelParams& mp, double t, int k = 1);

/// Circle angles of the touch points, continuous in t with psi(0) = 0.
/// Returned as (psi_plus, psi_minus); psi_plus >= psi_minus.
std::pair<double, double> boundary_cut_angles_two(const ModelParams& mp, double t, int k = 1);

struct BoundaryCutLocus {
    ModelParams mp;
    int k{1};

    double max_time() const;
    std::pair<double, double> frequencies(double t) const {
        return boundary_critical_freqs_two(mp, t, k);
    }
    std::pair<double, double> angles(double t) const {
        return boundary_cut_angles_two(mp, t, k);
    }
};

// Worst-case time formulas per regime.
double tmax_three_strong(double gamma);
double tmax_three_weak(double gamma, double omega0);
double tmax_two_strong(double gamma);
double tmax_two_middle(double gamma, double omega0);
double tmax_two_weak(double gamma, double omega0);
double worst_case_time(const ModelParams& mp);

/// Extremal-parameter interval whose endpoints at time t are reached for
/// the first time. Empty past the worst-case time.
std::vector<Interval> admissible_range(const ModelParams& mp, double t);

/// Parameters at which the front line at time t meets the critical
/// trajectory, bracketing the surviving extremal; equal at tangency.
std::optional<std::pair<double, double>> critical_intersection(const ModelParams& mp, double t);

}  // namespace su2opt
