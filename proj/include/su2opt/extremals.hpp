#pragma once

#include <functional>
#include <vector>

#include "su2opt/su2.hpp"

namespace su2opt {

/// Candidate optimal trajectory with three controls: the longitudinal
/// fraction alpha in [-1, 1] and the transverse phase phi.
struct ThreeControlExtremal {
    double alpha{0.0};
    double phi{0.0};
};

/// Candidate optimal trajectory with two controls: rotating-frame
/// frequency omega (any real) and phase phi.
struct TwoControlExtremal {
    double omega{0.0};
    double phi{0.0};

    double detuning(const ModelParams& mp) const { return mp.omega0 - omega; }
    /// Generalized Rabi rate sqrt(detuning^2 + gamma^2); always >= gamma.
    double rabi_rate(const ModelParams& mp) const;
};

struct ControlSample {
    double t{0.0};
    double ux{0.0};
    double uy{0.0};
    double uz{0.0};
};

/// Adjoint coefficients at one instant. bz is constant along an extremal;
/// (bx, by) rotate with a linear-in-time phase and amplitude mu.
struct Costate {
    double bx{0.0};
    double by{0.0};
    double bz{0.0};
    double mu{0.0};
    double phase{0.0};
    bool degenerate{false};  // |alpha| = 1 with three controls (mu = 0)
};

ControlSample controls_three(const ThreeControlExtremal& e, const ModelParams& mp, double t);
ControlSample controls_two(const TwoControlExtremal& e, const ModelParams& mp, double t);

SU2Operator state_three(const ThreeControlExtremal& e, const ModelParams& mp, double t);
SU2Operator state_two(const TwoControlExtremal& e, const ModelParams& mp, double t);

/// Disk projection of the three-control extremal; independent of phi.
DiskPoint disk_three(double alpha, const ModelParams& mp, double t);
DiskPoint disk_two(double omega, const ModelParams& mp, double t);

struct PolarPoint {
    double r2{1.0};
    double psi{0.0};  // wrapped to [0, 2*pi); equals -atan2(y, x) mod 2*pi
};

/// Polar form of disk_two on the first arch, valid for t < 2*pi/rabi_rate.
/// The removable singularity at tau = pi/(2a) is filled by continuity.
PolarPoint polar_two(double omega, const ModelParams& mp, double t);

Costate costate_three(const ThreeControlExtremal& e, const ModelParams& mp, double t);
Costate costate_two(const TwoControlExtremal& e, const ModelParams& mp, double t);

/// Max residual |u_k - gamma*b_k/|b|| over the grid. Throws on the
/// degenerate |alpha| = 1 costate.
double verify_pmp(const ThreeControlExtremal& e, const ModelParams& mp,
                  const std::vector<double>& t_grid);
double verify_pmp(const TwoControlExtremal& e, const ModelParams& mp,
                  const std::vector<double>& t_grid);

/// Fixed-step RK4 integration of the controlled evolution, renormalized
/// each step. Global error O(steps^-4).
SU2Operator propagate_numeric(const std::function<ControlSample(double)>& controls,
                              const ModelParams& mp, double t_final, int steps);

/// Propagate over a sampled pulse; controls between samples are linearly
/// interpolated. Samples must be sorted by time.
SU2Operator propagate_samples(const std::vector<ControlSample>& samples,
                              const ModelParams& mp, int steps);

/// RK4 integration of the costate equations driven by the extremal's own
/// control law; used to check that bz stays constant.
std::vector<Costate> propagate_costate_three(const ThreeControlExtremal& e,
                                             const ModelParams& mp,
                                             const std::vector<double>& t_grid, int steps);
std::vector<Costate> propagate_costate_two(const TwoControlExtremal& e,
                                           const ModelParams& mp,
                                           const std::vector<double>& t_grid, int steps);

/// Default step count for propagate_numeric: 4096 per unit of gamma*t.
int default_steps(const ModelParams& mp, double t_final);

}  // namespace su2opt
